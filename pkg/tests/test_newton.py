"""Polyhedral engine: facets, lambda, exact thresholds, test ideals,
covolumes, and the Groebner-free nu oracle."""

import random
from fractions import Fraction

import pytest

from oracles import point_in_hull_plus_orthant
from fthresh.errors import PreconditionError
from fthresh.frobenius import nu
from fthresh.newton import (MonomialIdeal, covolume_mult, fpt,
                            jumping_exponents, lambda_shifted,
                            monomial_fthreshold, newton_member,
                            newton_polyhedron, nu_monomial_oracle)
from fthresh.newton import test_ideal_monomial as tau_monomial
from fthresh.sessions import parse_session


def mono(d, *exps):
    return MonomialIdeal.from_exponents(d, exps)


def test_facets_examples():
    assert newton_polyhedron(mono(2, (2, 0), (0, 3))).facets == \
        ((Fraction(1, 2), Fraction(1, 3)),)
    assert newton_polyhedron(mono(2, (2, 0), (0, 2))).facets == \
        ((Fraction(1, 2), Fraction(1, 2)),)
    assert set(newton_polyhedron(mono(2, (2, 0), (1, 1), (0, 3))).facets) == \
        {(Fraction(1, 2), Fraction(1, 2)), (Fraction(2, 3), Fraction(1, 3))}


def test_facets_properties():
    rng = random.Random(17)
    for _ in range(25):
        d = rng.choice((1, 2, 3))
        exps = [tuple(rng.randint(0, 4) for _ in range(d))
                for _ in range(rng.randint(1, 4))]
        exps = [e for e in exps if any(e)]
        if not exps:
            continue
        a = MonomialIdeal.from_exponents(d, exps)
        P = newton_polyhedron(a)
        gens = [tuple(map(Fraction, g)) for g in a.gens]
        for w in P.facets:
            assert all(x >= 0 for x in w)
            assert all(sum(wi * gi for wi, gi in zip(w, g)) >= 1 for g in gens)
            assert any(sum(wi * gi for wi, gi in zip(w, g)) == 1 for g in gens)


def test_membership_agrees_with_exact_lp():
    rng = random.Random(29)
    checked = 0
    while checked < 1000:
        d = rng.choice((2, 3))
        exps = [tuple(rng.randint(0, 4) for _ in range(d))
                for _ in range(rng.randint(1, 4))]
        exps = [e for e in exps if any(e)]
        if not exps:
            continue
        a = MonomialIdeal.from_exponents(d, exps)
        P = newton_polyhedron(a)
        for _ in range(25):
            u = tuple(Fraction(rng.randint(0, 12), rng.randint(1, 3))
                      for _ in range(d))
            assert newton_member(u, P) == point_in_hull_plus_orthant(u, a.gens)
            checked += 1


def test_lambda_examples():
    P = newton_polyhedron(mono(2, (2, 0), (0, 3)))
    assert lambda_shifted(P, (0, 0)) == Fraction(5, 6)
    assert lambda_shifted(P, (3, 3)) == Fraction(10, 3)
    P2 = newton_polyhedron(mono(2, (1, 0), (0, 1)))
    assert lambda_shifted(P2, (1, 1)) == 4


def test_lambda_min_form_matches_scaling_definition():
    rng = random.Random(31)
    for _ in range(20):
        d = rng.choice((2, 3))
        exps = [tuple(rng.randint(0, 3) for _ in range(d))
                for _ in range(rng.randint(1, 4))]
        exps = [e for e in exps if any(e)]
        if not exps:
            continue
        P = newton_polyhedron(MonomialIdeal.from_exponents(d, exps))
        u = tuple(rng.randint(0, 5) for _ in range(d))
        lam = lambda_shifted(P, u)
        shifted = tuple(Fraction(x + 1) for x in u)
        scaled = tuple(x / lam for x in shifted)
        values = [sum(wi * si for wi, si in zip(w, scaled)) for w in P.facets]
        assert min(values) == 1  # on the boundary: one facet tight, none violated


def test_monomial_fthreshold_examples():
    value, argmax = monomial_fthreshold(mono(2, (2, 0), (0, 3)),
                                        mono(2, (4, 0), (0, 4)))
    assert (value, argmax) == (Fraction(10, 3), (3, 3))
    # powers of the maximal ideal: (d + l - 1) / k
    for d in (2, 3):
        for k in (1, 2):
            for ell in (2, 3):
                a = mono(d, *[tuple(k if j == i else 0 for j in range(d))
                              for i in range(d)]).power(1)
                a_full = MonomialIdeal.from_exponents(
                    d, [e for e in _max_ideal_power(d, k)])
                J = MonomialIdeal.from_exponents(
                    d, [e for e in _max_ideal_power(d, ell)])
                value, _ = monomial_fthreshold(a_full, J)
                assert value == Fraction(d + ell - 1, k)


def _max_ideal_power(d, k):
    from itertools import product
    out = []
    for exp in product(range(k + 1), repeat=d):
        if sum(exp) == k:
            out.append(exp)
    return out


def test_max_ideal_formula():
    rng = random.Random(43)
    m2 = mono(2, (1, 0), (0, 1))
    J = mono(2, (2, 0), (0, 2))
    value, _ = monomial_fthreshold(m2, J)
    assert value == 4
    for _ in range(10):
        d = rng.choice((2, 3))
        exps = [tuple(rng.randint(1, 4) if j == i else 0 for j in range(d))
                for i in range(d)]
        if rng.random() < 0.5:
            exps.append(tuple(rng.randint(0, 3) for _ in range(d)))
        Jr = MonomialIdeal.from_exponents(d, [e for e in exps if any(e)])
        if not Jr.is_zero_dimensional:
            continue
        m = MonomialIdeal.from_exponents(
            d, [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)])
        value, _ = monomial_fthreshold(m, Jr)
        assert value == Jr.max_standard_degree() + d


def test_scaling_law():
    a = mono(2, (2, 0), (0, 3))
    J = mono(2, (4, 0), (0, 4))
    base, _ = monomial_fthreshold(a, J)
    for r in (2, 3):
        scaled, _ = monomial_fthreshold(a.power(r), J)
        assert scaled == base / r


def test_test_ideal_examples():
    a = mono(2, (2, 0), (0, 3))
    assert tau_monomial(a, Fraction(5, 6)).generators == ((0, 1), (1, 0))
    assert tau_monomial(mono(2, (1, 0), (0, 1)), Fraction(0)).generators \
        == ((0, 0),)
    with pytest.raises(PreconditionError):
        tau_monomial(a, Fraction(-1))


def test_test_ideal_with_mixed_facets():
    # (x^2, xy): lambda = min((u1+u2)/2 + 1, u1 + 1); tau at c = 2 is
    # generated by (2,1) and (3,0)
    a = mono(2, (2, 0), (1, 1))
    report = tau_monomial(a, Fraction(2))
    assert report.generators == ((2, 1), (3, 0))


def test_jumping_exponents_examples():
    a = mono(2, (2, 0), (0, 3))
    assert jumping_exponents(a, Fraction(3, 2)) == \
        [Fraction(5, 6), Fraction(7, 6), Fraction(4, 3)]
    assert fpt(a) == Fraction(5, 6)
    # 3/2 itself is a jump, excluded by the strict bound
    assert jumping_exponents(a, Fraction(3, 2) + Fraction(1, 100))[-1] == Fraction(3, 2)


def test_tau_monotone_and_jumps_are_the_discontinuities():
    a = mono(2, (2, 0), (0, 3))
    # strict bound: cover the whole sampling grid, endpoints included
    jumps = jumping_exponents(a, Fraction(25, 12))
    # sample c on a refinement: tau is constant between consecutive jumps and
    # drops exactly at each jump
    grid = sorted({Fraction(k, 12) for k in range(0, 25)})
    prev_c, prev_gens = None, None
    for c in grid:
        gens = tau_monomial(a, c).generators
        if prev_c is not None:
            crossed = [j for j in jumps if prev_c < j <= c]
            prev_set = set(prev_gens)
            cur_set = set(gens)
            if crossed:
                assert cur_set != prev_set
            else:
                assert cur_set == prev_set
            # monotone: tau(c') contained in tau(c) for c <= c'
            P = newton_polyhedron(a)
            for g in cur_set:
                assert any(all(x >= y for x, y in zip(g, h)) for h in prev_set) \
                    or lambda_shifted(P, g) > c
        prev_c, prev_gens = c, gens


def test_regular_case_threshold_equals_jumping_exponent():
    # smallest c with tau(a^c) inside J equals the max-lambda threshold
    rng = random.Random(53)
    for _ in range(10):
        extra = (rng.randint(0, 2), rng.randint(0, 2))
        exps = [(rng.randint(1, 3), 0), (0, rng.randint(1, 3))]
        if any(extra):
            exps.append(extra)
        a = mono(2, *exps)
        J = mono(2, (rng.randint(1, 3), 0), (0, rng.randint(1, 3)))
        c, _ = monomial_fthreshold(a, J)
        inside = all(J.contains(g) for g in tau_monomial(a, c).generators)
        assert inside
        eps = Fraction(1, 1000)
        just_below = tau_monomial(a, c - eps).generators
        assert not all(J.contains(g) for g in just_below)


def test_covolume_examples():
    report = covolume_mult(mono(2, (2, 0), (0, 3)))
    assert (report.covolume, report.multiplicity, report.colength) == (3, 6, 6)
    for k in (1, 2, 3):
        power = MonomialIdeal.from_exponents(2, _max_ideal_power(2, k))
        assert covolume_mult(power).multiplicity == k * k
    box = covolume_mult(mono(2, (3, 0), (0, 5)))
    assert box.multiplicity == 15 == box.colength


def test_covolume_dimension_three_and_four():
    assert covolume_mult(mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2))).multiplicity == 8
    assert covolume_mult(mono(4, (1, 0, 0, 0), (0, 2, 0, 0), (0, 0, 3, 0),
                              (0, 0, 0, 2))).multiplicity == 12
    simplex = MonomialIdeal.from_exponents(3, _max_ideal_power(3, 2))
    assert covolume_mult(simplex).multiplicity == 8


def test_nu_oracle_examples():
    a = mono(2, (2, 0), (0, 3))
    J = mono(2, (4, 0), (0, 4))
    assert [nu_monomial_oracle(a, J, q) for q in (2, 4, 8)] == [5, 12, 25]
    m = mono(2, (1, 0), (0, 1))
    for q in (2, 4, 8):
        assert nu_monomial_oracle(m, m, q) == 2 * (q - 1)


def test_oracle_matches_frontier_on_battery():
    rng = random.Random(61)
    names = {2: "x y", 3: "x y z"}
    done = 0
    while done < 12:
        p = rng.choice((2, 3))
        d = rng.choice((2, 3))
        j_exps = [tuple(rng.randint(1, 5) if j == i else 0 for j in range(d))
                  for i in range(d)]
        a_exps = list(j_exps)
        a_exps = [tuple(rng.randint(1, 5) if j == i else 0 for j in range(d))
                  for i in range(d)]
        if rng.random() < 0.6:
            a_exps.append(tuple(rng.randint(0, 5) for _ in range(d)))
        a = MonomialIdeal.from_exponents(d, [e for e in a_exps if any(e)])
        J = MonomialIdeal.from_exponents(d, j_exps)
        qs = (p, p * p) if d == 3 else (p, p * p, p**3)
        gens_a = ["*".join(f"{n}^{e}" for n, e in zip(names[d].split(), g) if e)
                  for g in a.gens]
        gens_j = ["*".join(f"{n}^{e}" for n, e in zip(names[d].split(), g) if e)
                  for g in J.gens]
        s = parse_session(f"char {p} / vars {names[d]} / ideal a = "
                          + ", ".join(gens_a) + " / ideal J = " + ", ".join(gens_j))
        for q in qs:
            if max(j_exps[i][i] for i in range(d)) * q > 40 and d == 3:
                continue
            assert nu_monomial_oracle(a, J, q) == nu(s.ideal("a"), s.ideal("J"), q)
        done += 1


def test_convergence_sandwich():
    # nu(q)/q nondecreasing and bounded by the exact threshold on monomial
    # input in a polynomial ring; the final gap is recorded exactly
    a = mono(2, (2, 0), (0, 3))
    J = mono(2, (4, 0), (0, 4))
    c, _ = monomial_fthreshold(a, J)
    ratios = [Fraction(nu_monomial_oracle(a, J, q), q) for q in (2, 4, 8, 16)]
    assert ratios == sorted(ratios)
    assert all(r <= c for r in ratios)
    gap = c - ratios[-1]
    assert 0 <= gap < Fraction(1, 2)


def test_degenerate_inputs_rejected():
    with pytest.raises(PreconditionError):
        newton_polyhedron(MonomialIdeal.from_exponents(2, []))
    with pytest.raises(PreconditionError):
        newton_polyhedron(mono(2, (0, 0)))
    with pytest.raises(PreconditionError):
        monomial_fthreshold(mono(2, (1, 0)), mono(2, (1, 0)))
    with pytest.raises(PreconditionError):
        covolume_mult(mono(2, (1, 0)))
    with pytest.raises(PreconditionError):
        newton_polyhedron(MonomialIdeal.from_exponents(
            5, [tuple(1 if j == i else 0 for j in range(5)) for i in range(5)]))
