"""Multiplicity-bound checkers and the deterministic battery."""

import random
from fractions import Fraction

import pytest

from fthresh.bounds import (HOLDS_EXACT, HOLDS_GIVEN_LOWER_BOUND, INCONCLUSIVE,
                            another_check, conjecture_check, diagonal_check,
                            homogeneous_check, monomial_battery, onedim_check,
                            prefix_sum_claim, run_battery)
from fthresh.errors import PreconditionError
from fthresh.newton import MonomialIdeal
from fthresh.sessions import parse_session


def test_conjecture_exact_monomial():
    s = parse_session("char 2 / vars x y / ideal a = x^2, y^3 / ideal J = x^4, y^4")
    report = conjecture_check(s.ideal("a"), s.ideal("J"), 1)
    assert report.verdict == HOLDS_EXACT
    assert report.lhs == 6
    assert report.rhs == Fraction(144, 25)
    assert report.threshold_value == Fraction(10, 3)
    assert report.threshold_provenance == "polyhedral"


def test_conjecture_e8_both_directions(e8_ring):
    a, J = e8_ring.ideal("a"), e8_ring.ideal("J")
    report = conjecture_check(a, J, 2, assert_f_pure=True)
    assert report.verdict == HOLDS_GIVEN_LOWER_BOUND
    assert report.lhs == 3
    assert report.rhs == Fraction(19208, 6561)  # (2 / (81/49))^2 * 2
    swapped = conjecture_check(J, a, 2, assert_f_pure=True)
    assert swapped.verdict == HOLDS_GIVEN_LOWER_BOUND
    assert swapped.lhs == 2
    assert swapped.rhs == Fraction(7203, 3721)  # (2 / (122/49))^2 * 3


def test_conjecture_requires_certified_threshold(e8_ring):
    report = conjecture_check(e8_ring.ideal("a"), e8_ring.ideal("J"), 2)
    assert report.verdict == INCONCLUSIVE
    assert any("certif" in n for n in report.notes)


def test_conjecture_monotone_in_threshold(e8_ring):
    # the RHS grows as the certified bound shrinks, so passing with a weaker
    # bound is the stronger statement; here e_max = 1 is too weak to decide
    # (11/7 gives RHS > 3) while e_max = 2 passes
    short = conjecture_check(e8_ring.ideal("a"), e8_ring.ideal("J"), 1,
                             assert_f_pure=True)
    long = conjecture_check(e8_ring.ideal("a"), e8_ring.ideal("J"), 2,
                            assert_f_pure=True)
    assert short.rhs >= long.rhs
    assert short.rhs == Fraction(392, 121)
    assert short.verdict == INCONCLUSIVE
    assert long.verdict == HOLDS_GIVEN_LOWER_BOUND
    if short.verdict == HOLDS_GIVEN_LOWER_BOUND:
        assert long.verdict == HOLDS_GIVEN_LOWER_BOUND


def test_conjecture_guards(a1_ring):
    s = parse_session("char 5 / vars x y / ideal a = x / ideal J = x^2, y^2")
    with pytest.raises(PreconditionError):
        conjecture_check(s.ideal("J"), s.ideal("a"), 1)
    with pytest.raises(PreconditionError):
        conjecture_check(s.ideal("a"), s.ideal("J"), 1)


def test_diagonal_check_examples():
    a = MonomialIdeal.from_exponents(2, [(2, 0), (0, 3)])
    report = diagonal_check(a, (4, 4))
    assert report.verdict == HOLDS_EXACT
    assert report.lhs == 6 and report.rhs == Fraction(144, 25)
    # equality case a = J = (x^c, y^c)
    for c in (2, 3):
        square = MonomialIdeal.from_exponents(2, [(c, 0), (0, c)])
        eq = diagonal_check(square, (c, c))
        assert eq.lhs == eq.rhs == c * c
        assert "equality" in eq.notes


def test_another_check_examples():
    a = MonomialIdeal.from_exponents(2, [(2, 0), (0, 3)])
    J = MonomialIdeal.from_exponents(2, [(4, 0), (0, 4)])
    report = another_check(a, J)
    assert report.verdict == HOLDS_EXACT
    assert report.rhs == Fraction(63, 25)  # (2/(10/3))^2 * (8 - 2 + 1)
    squares = MonomialIdeal.from_exponents(2, [(2, 0), (0, 2)])
    self_check = another_check(squares, squares)
    assert self_check.verdict == HOLDS_EXACT
    assert self_check.lhs == 4 and self_check.rhs == 3
    m = MonomialIdeal.from_exponents(2, [(1, 0), (0, 1)])
    unit_lhs = another_check(m, squares)
    assert unit_lhs.lhs == 1 and unit_lhs.rhs == Fraction(3, 4)


def test_homogeneous_check_plane(plane_f5):
    report, bound = homogeneous_check(plane_f5.ideal("m"), plane_f5.ideal("J"))
    assert report.N == 3
    assert report.t == (2,)
    assert report.prefix_ok == (True,)
    assert report.final_ok
    assert bound.verdict == HOLDS_EXACT
    assert bound.lhs == bound.rhs == 1
    assert report.N >= sum(report.t) - report.n + 1


def test_homogeneous_check_same_ideal(plane_f5):
    report, bound = homogeneous_check(plane_f5.ideal("J"), plane_f5.ideal("J"))
    assert report.N == 1
    assert bound.lhs == bound.rhs == 4


def test_homogeneous_check_non_monomial_parameters():
    s = parse_session("char 7 / vars x y / ideal m = x, y / ideal J = x^2, x*y + y^2")
    report, bound = homogeneous_check(s.ideal("m"), s.ideal("J"))
    assert report.N == 3
    assert bound.lhs == 1 and bound.rhs == 1
    assert bound.verdict == HOLDS_EXACT


def test_homogeneous_rejects_inhomogeneous():
    s = parse_session("char 5 / vars x y / ideal a = x + y^2, y^3 / ideal J = x^2, y^2")
    with pytest.raises(PreconditionError, match="homogeneous"):
        homogeneous_check(s.ideal("a"), s.ideal("J"))


def test_onedim_cusp_examples():
    s = parse_session("char 5 / vars x y / rel y^2 - x^3 / "
                      "ideal m = x, y / ideal X = x / ideal Y = y")
    report = onedim_check(s.ideal("m"), s.ideal("X"), 2)
    assert report.predicted == 1
    assert report.gap == 0
    assert report.e_a == 2 and report.e_J == 2
    second = onedim_check(s.ideal("X"), s.ideal("Y"), 2)
    assert second.predicted == Fraction(3, 2)
    assert second.gap == 0
    trivial = onedim_check(s.ideal("m"), s.ideal("m"), 1)
    assert trivial.predicted == 1
    assert trivial.gap == 0


def test_onedim_gap_never_grows_with_emax():
    s = parse_session("char 5 / vars x y / rel y^2 - x^3 / ideal m = x, y / ideal X = x")
    gaps = [onedim_check(s.ideal("m"), s.ideal("X"), e).gap for e in (1, 2)]
    assert gaps[1] <= gaps[0]


def test_onedim_guards(plane_f5):
    with pytest.raises(PreconditionError, match="curve"):
        onedim_check(plane_f5.ideal("m"), plane_f5.ideal("J"), 1)


def test_prefix_sum_claim_examples():
    assert prefix_sum_claim([1, 2], [3, -1])
    assert prefix_sum_claim([1, 1, 4], [1, -1, 0])
    with pytest.raises(PreconditionError):
        prefix_sum_claim([2, 3], [1, 1])
    with pytest.raises(PreconditionError):
        prefix_sum_claim([1, 2], [-1, 5])
    with pytest.raises(PreconditionError):
        prefix_sum_claim([1, 2, 1], [1, 1, 1])


def test_prefix_sum_claim_random_battery():
    rng = random.Random(424242)
    for _ in range(1000):
        n = rng.randint(1, 6)
        gamma = [Fraction(1)]
        for _ in range(n - 1):
            gamma.append(gamma[-1] + Fraction(rng.randint(0, 4), rng.randint(1, 3)))
        # prescribe nonnegative weighted prefix sums, then solve for lambda
        sums = [Fraction(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(n)]
        lam = []
        prev = Fraction(0)
        for g, s in zip(gamma, sums):
            lam.append((s - prev) / g)
            prev = s
        assert prefix_sum_claim(gamma, lam)


def test_battery_is_deterministic_and_holds():
    first = run_battery(seed=20080614, count=15)
    second = run_battery(seed=20080614, count=15)
    assert first.rows == second.rows
    assert first.all_hold
    other_seed = run_battery(seed=7, count=5)
    assert other_seed.all_hold


def test_battery_instances_are_zero_dimensional():
    for inst in monomial_battery(11, 25):
        assert inst.a.is_zero_dimensional
        assert len(inst.diagonal) == inst.d
