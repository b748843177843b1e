"""Checkers for the multiplicity-bound inequalities.

Convention for uncertified thresholds: the conjecture-style right-hand side
(d/c)^d * e(J) grows as the threshold shrinks, so evaluating it at a
certified LOWER bound for the threshold gives a larger right-hand side.
Passing that comparison is therefore strictly stronger than the conjectural
inequality; the verdict name holds_given_lower_bound makes this explicit,
and no verdict ever claims more than its provenance supports.

Theorem-backed exact checks (diagonal, the extra regular-monomial
inequality, homogeneous with a verified Cohen-Macaulay presentation) treat a
violation as an internal error: on valid input it can only mean a bug.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalCheckError, PreconditionError
from .frobenius import nu, nu_sequence, threshold_estimate, ThresholdEstimate
from .groebner import Budget, dimension, ideal_member, ring_dimension
from .multiplicity import (MultiplicityReport, colength, hs_estimate,
                           mult_parameter, multiplicity_exact, parameter_check)
from .newton import MonomialIdeal, covolume_mult, monomial_fthreshold
from .poly import Ideal

HOLDS_EXACT = "holds_exact"
HOLDS_GIVEN_LOWER_BOUND = "holds_given_lower_bound"
VIOLATED_EXACT = "violated_exact"
INCONCLUSIVE = "inconclusive"

PROVENANCE_POLYHEDRAL = "polyhedral"
PROVENANCE_LOWER_BOUND = "certified_lower_bound"
PROVENANCE_NONE = "none"


@dataclass
class BoundReport:
    lhs: Fraction
    rhs: Fraction | None
    threshold_value: Fraction | None
    threshold_provenance: str
    d: int
    verdict: str
    assumptions: tuple[str, ...]
    notes: tuple[str, ...] = ()


def _merge_flags(*groups: tuple[str, ...]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for group in groups:
        for flag in group:
            seen.setdefault(flag)
    return tuple(seen)


def conjecture_check(a: Ideal, J: Ideal, e_max: int, *,
                     assert_f_pure: bool = False,
                     budget: Budget | int | None = None) -> BoundReport:
    """Check e(a) >= (d / c)^d e(J) for the best available threshold value c:
    exact polyhedral on monomial input in a polynomial ring, otherwise a
    certified lower bound from the nu sequence (F-purity required)."""
    budget = Budget.ensure(budget)
    d = parameter_check(J, budget)
    if dimension(a, budget) != 0:
        raise PreconditionError("numerator ideal must be zero-dimensional")
    e_J = mult_parameter(J, budget)
    e_a = multiplicity_exact(a, budget)
    assumptions = _merge_flags(e_J.assumptions)
    if e_a is None:
        return BoundReport(
            lhs=Fraction(0), rhs=None, threshold_value=None,
            threshold_provenance=PROVENANCE_NONE, d=d, verdict=INCONCLUSIVE,
            assumptions=assumptions,
            notes=("no exact multiplicity path for the numerator ideal; "
                   "only the Hilbert-Samuel estimate applies",))
    assumptions = _merge_flags(assumptions, e_a.assumptions)

    ring = a.ring
    if ring.is_polynomial_ring and all(g.is_monomial for g in a.generators) \
            and all(g.is_monomial for g in J.generators):
        c, _ = monomial_fthreshold(MonomialIdeal.from_ideal(a),
                                   MonomialIdeal.from_ideal(J))
        rhs = Fraction(d, 1)**d / c**d * e_J.multiplicity
        if e_a.multiplicity < rhs:
            raise InternalCheckError(
                f"diagonal-case conjecture violated: {e_a.multiplicity} < {rhs}; "
                "this is a theorem, so the implementation is wrong")
        return BoundReport(lhs=e_a.multiplicity, rhs=rhs, threshold_value=c,
                           threshold_provenance=PROVENANCE_POLYHEDRAL, d=d,
                           verdict=HOLDS_EXACT, assumptions=assumptions)

    seq = nu_sequence(a, J, e_max, assert_f_pure=assert_f_pure, budget=budget)
    est = threshold_estimate(seq)
    if not est.sup_certified or est.sup_lower == 0:
        return BoundReport(
            lhs=e_a.multiplicity, rhs=None, threshold_value=est.sup_lower,
            threshold_provenance=PROVENANCE_NONE, d=d, verdict=INCONCLUSIVE,
            assumptions=assumptions,
            notes=("no certified threshold available: assert F-purity "
                   "(e.g. after a Fedder check) to certify the lower bound",))
    c_hat = est.sup_lower
    rhs = Fraction(d, 1)**d / c_hat**d * e_J.multiplicity
    assumptions = _merge_flags(
        assumptions, ("F-purity asserted: nu(q)/q certified nondecreasing",))
    if e_a.multiplicity >= rhs:
        return BoundReport(lhs=e_a.multiplicity, rhs=rhs, threshold_value=c_hat,
                           threshold_provenance=PROVENANCE_LOWER_BOUND, d=d,
                           verdict=HOLDS_GIVEN_LOWER_BOUND, assumptions=assumptions,
                           notes=("right-hand side evaluated at a certified lower "
                                  "bound, a strictly stronger inequality",))
    return BoundReport(lhs=e_a.multiplicity, rhs=rhs, threshold_value=c_hat,
                       threshold_provenance=PROVENANCE_LOWER_BOUND, d=d,
                       verdict=INCONCLUSIVE, assumptions=assumptions,
                       notes=("certified lower bound too weak to decide; "
                              "increase e_max",))


def diagonal_check(a: MonomialIdeal, exponents) -> BoundReport:
    """Exact check of e(a) >= (d/c^J(a))^d * a_1...a_d for diagonal
    J = (x_1^{a_1}, .., x_d^{a_d}); guaranteed by the theorem, so a
    violation aborts."""
    exponents = tuple(int(x) for x in exponents)
    if len(exponents) != a.dim or any(x < 1 for x in exponents):
        raise PreconditionError("need one positive exponent per variable")
    d = a.dim
    J = MonomialIdeal.from_exponents(
        d, [tuple(e if j == i else 0 for j in range(d)) for i, e in enumerate(exponents)])
    c, _ = monomial_fthreshold(a, J)
    vol = covolume_mult(a)
    e_J = Fraction(1)
    for x in exponents:
        e_J *= x
    rhs = Fraction(d, 1)**d / c**d * e_J
    if vol.multiplicity < rhs:
        raise InternalCheckError(
            f"diagonal bound violated: {vol.multiplicity} < {rhs}")
    notes = ("equality",) if vol.multiplicity == rhs else ()
    return BoundReport(lhs=vol.multiplicity, rhs=rhs, threshold_value=c,
                       threshold_provenance=PROVENANCE_POLYHEDRAL, d=d,
                       verdict=HOLDS_EXACT, assumptions=(), notes=notes)


def another_check(a: MonomialIdeal, J: MonomialIdeal) -> BoundReport:
    """Exact check of e(a) >= (d/c^J(a))^d (c^J(m) - d + 1) for
    zero-dimensional monomial ideals in a regular ring."""
    if a.dim != J.dim:
        raise PreconditionError("ideals live in different dimensions")
    if not (a.is_zero_dimensional and J.is_zero_dimensional):
        raise PreconditionError("both ideals must be zero-dimensional")
    d = a.dim
    c, _ = monomial_fthreshold(a, J)
    c_m = J.max_standard_degree() + d
    vol = covolume_mult(a)
    rhs = Fraction(d, 1)**d / c**d * (c_m - d + 1)
    if vol.multiplicity < rhs:
        raise InternalCheckError(
            f"regular-monomial bound violated: {vol.multiplicity} < {rhs}")
    return BoundReport(lhs=vol.multiplicity, rhs=rhs, threshold_value=c,
                       threshold_provenance=PROVENANCE_POLYHEDRAL, d=d,
                       verdict=HOLDS_EXACT, assumptions=(),
                       notes=(f"c^J(m) = {c_m}",))


# ---------------------------------------------------------------------------
# homogeneous systems of parameters


@dataclass
class HomogeneousReport:
    n: int
    a_degrees: tuple[int, ...]
    j_degrees: tuple[int, ...]
    N: int
    t: tuple[int, ...]
    prefix_ok: tuple[bool, ...]
    final_ok: bool
    diagnostics: tuple[str, ...]


def _sorted_homogeneous_gens(ideal: Ideal, label: str):
    keyf = ideal.ring.key_fn()
    gens = []
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise PreconditionError(f"{label} has a non-homogeneous generator: {g}")
        gens.append(g)
    gens.sort(key=lambda g: (g.total_degree, keyf(g.lead_exp)))
    return gens, tuple(g.total_degree for g in gens)


def homogeneous_check(a: Ideal, J: Ideal, *,
                      budget: Budget | int | None = None) -> tuple[HomogeneousReport, BoundReport]:
    """Check the graded bound e(a) >= (n/(n+N-1))^n e(J) together with the
    intermediate degree inequalities from the minimal-membership construction
    t_1, .., t_{n-1}."""
    budget = Budget.ensure(budget)
    ring = a.ring
    for rel in ring.relations:
        if not rel.is_homogeneous():
            raise PreconditionError("presentation is not graded: non-homogeneous relation")
    n = parameter_check(a, budget)
    parameter_check(J, budget)
    x_gens, a_deg = _sorted_homogeneous_gens(a, "numerator")
    _, j_deg = _sorted_homogeneous_gens(J, "denominator")

    # Smallest N with a^N inside J; both are m-primary so nu(a, J, 1) is it
    # minus one.
    N = nu(a, J, 1, budget=budget, check_radical=False) + 1

    t: list[int] = []
    prefix = ring.one()
    # x^t stabilizes inside J within colength steps (Nakayama on the chain
    # of images in R/J), so this cap can only trip on a bug.
    colen_cap = colength(J, budget) + 2
    for i in range(n - 1):
        if ideal_member(prefix, J, budget):
            raise InternalCheckError(
                "minimality of the t-construction failed: prefix already in J")
        ti = None
        for cand in range(1, colen_cap):
            if ideal_member(prefix * x_gens[i]**cand, J, budget):
                ti = cand
                break
        if ti is None:
            raise InternalCheckError("no power of a parameter generator landed in J")
        t.append(ti)
        prefix = prefix * x_gens[i]**(ti - 1)

    diagnostics: list[str] = []
    prefix_ok = []
    for i in range(1, n):
        lhs_i = sum(t[j] * a_deg[j] for j in range(i))
        rhs_i = sum(j_deg[:i])
        ok = lhs_i >= rhs_i
        prefix_ok.append(ok)
        if not ok:
            diagnostics.append(
                f"prefix degree inequality failed at i={i}: {lhs_i} < {rhs_i}")
    slack = N - sum(t) + n - 1
    final_lhs = sum(ti * ai for ti, ai in zip(t, a_deg)) + slack * a_deg[n - 1]
    final_rhs = sum(j_deg)
    final_ok = final_lhs >= final_rhs
    if not final_ok:
        diagnostics.append(f"final degree inequality failed: {final_lhs} < {final_rhs}")
    if N < sum(t) - n + 2:
        diagnostics.append(f"N = {N} below the t-sum bound {sum(t) - n + 2}")

    e_a = mult_parameter(a, budget)
    e_J = mult_parameter(J, budget)
    rhs = Fraction(n, n + N - 1)**n * e_J.multiplicity
    headline_ok = e_a.multiplicity >= rhs
    if not headline_ok:
        diagnostics.append(f"headline inequality failed: {e_a.multiplicity} < {rhs}")

    cm_verified = len(ring.relations_data) <= 1
    if diagnostics and cm_verified:
        raise InternalCheckError(
            "graded bound violated in a verified Cohen-Macaulay presentation: "
            + "; ".join(diagnostics))
    verdict = HOLDS_EXACT if headline_ok and not diagnostics else VIOLATED_EXACT
    notes = tuple(diagnostics)
    if diagnostics and not cm_verified:
        notes += ("Cohen-Macaulay hypothesis is unverifiable for this "
                  "presentation and has likely failed",)
    report = HomogeneousReport(
        n=n, a_degrees=a_deg, j_degrees=j_deg, N=N, t=tuple(t),
        prefix_ok=tuple(prefix_ok), final_ok=final_ok, diagnostics=tuple(diagnostics))
    bound = BoundReport(lhs=e_a.multiplicity, rhs=rhs,
                        threshold_value=Fraction(n + N - 1),
                        threshold_provenance="formula", d=n, verdict=verdict,
                        assumptions=_merge_flags(e_a.assumptions, e_J.assumptions),
                        notes=notes)
    return report, bound


# ---------------------------------------------------------------------------
# dimension one


@dataclass
class OneDimReport:
    predicted: Fraction
    estimate: ThresholdEstimate
    gap: Fraction
    e_a: Fraction
    e_J: Fraction
    assumptions: tuple[str, ...]


def _onedim_multiplicity(ideal: Ideal, budget: Budget, hs_n_max: int):
    if len(ideal.generators) == 1:
        rep = mult_parameter(ideal, budget)
        return rep.multiplicity, rep.assumptions
    est = hs_estimate(ideal, hs_n_max, budget)
    if not est.stabilized or est.extrapolation is None:
        raise PreconditionError(
            "Hilbert-Samuel sequence did not stabilize; raise hs_n_max")
    return est.extrapolation, (f"multiplicity via stabilized Hilbert-Samuel "
                               f"differences up to n = {hs_n_max}",)


def onedim_check(a: Ideal, J: Ideal, e_max: int, *,
                 hs_n_max: int = 4,
                 budget: Budget | int | None = None) -> OneDimReport:
    """In a one-dimensional presentation the F-threshold should equal
    e(J)/e(a); reports the exact gap between that prediction and the
    sequence estimate."""
    budget = Budget.ensure(budget)
    if ring_dimension(a.ring, budget) != 1:
        raise PreconditionError("one-dimensional check requires a curve presentation")
    for ideal, label in ((a, "numerator"), (J, "denominator")):
        if dimension(ideal, budget) != 0:
            raise PreconditionError(f"{label} ideal is not m-primary")
    e_a, flags_a = _onedim_multiplicity(a, budget, hs_n_max)
    e_J, flags_J = _onedim_multiplicity(J, budget, hs_n_max)
    predicted = e_J / e_a
    seq = nu_sequence(a, J, e_max, budget=budget)
    est = threshold_estimate(seq)
    reference = est.affine_fit if est.affine_fit is not None else est.sup_lower
    gap = abs(reference - predicted)
    return OneDimReport(
        predicted=predicted, estimate=est, gap=gap, e_a=e_a, e_J=e_J,
        assumptions=_merge_flags(flags_a, flags_J,
                                 ("analytically irreducible domain: unverified",)))


# ---------------------------------------------------------------------------
# the prefix-sum lemma and the deterministic battery


def prefix_sum_claim(gamma, lam) -> bool:
    """Tested lemma: with 1 = gamma_1 <= .. <= gamma_n and all prefix sums
    of gamma_i * lam_i nonnegative, the plain sum of lam is nonnegative.
    Precondition violations raise; they are never reported as a false
    conclusion."""
    gamma = [Fraction(g) for g in gamma]
    lam = [Fraction(x) for x in lam]
    if len(gamma) != len(lam) or not gamma:
        raise PreconditionError("need matching nonempty coefficient lists")
    if gamma[0] != 1:
        raise PreconditionError("gamma must start at 1")
    if any(g2 < g1 for g1, g2 in zip(gamma, gamma[1:])):
        raise PreconditionError("gamma must be nondecreasing")
    acc = Fraction(0)
    for g, x in zip(gamma, lam):
        acc += g * x
        if acc < 0:
            raise PreconditionError("a weighted prefix sum is negative")
    return sum(lam, Fraction(0)) >= 0


@dataclass
class BatteryInstance:
    d: int
    a: MonomialIdeal
    diagonal: tuple[int, ...]


@dataclass
class BatteryReport:
    seed: int
    count: int
    rows: list[dict]
    all_hold: bool


def monomial_battery(seed: int, count: int, d_choices=(2, 3),
                     exp_max: int = 5) -> list[BatteryInstance]:
    """Deterministic seeded enumeration of zero-dimensional monomial ideals
    with a diagonal denominator."""
    rng = random.Random(seed)
    instances = []
    for _ in range(count):
        d = rng.choice(d_choices)
        diagonal = tuple(rng.randint(1, exp_max) for _ in range(d))
        exps = [tuple(rng.randint(1, exp_max) if j == i else 0 for j in range(d))
                for i in range(d)]
        for _ in range(rng.randint(0, 2)):
            extra = tuple(rng.randint(0, exp_max) for _ in range(d))
            if any(extra):
                exps.append(extra)
        instances.append(BatteryInstance(
            d=d, a=MonomialIdeal.from_exponents(d, exps), diagonal=diagonal))
    return instances


def run_battery(seed: int = 20080614, count: int = 40) -> BatteryReport:
    """Run the exact theorem-backed checkers over the battery; every row must
    hold (violations raise InternalCheckError out of the checkers)."""
    rows = []
    for inst in monomial_battery(seed, count):
        diag = diagonal_check(inst.a, inst.diagonal)
        J = MonomialIdeal.from_exponents(
            inst.d, [tuple(e if j == i else 0 for j in range(inst.d))
                     for i, e in enumerate(inst.diagonal)])
        another = another_check(inst.a, J)
        rows.append({
            "d": inst.d,
            "a": str(inst.a),
            "diagonal": inst.diagonal,
            "diagonal_check": diag.verdict,
            "diagonal_lhs": diag.lhs,
            "diagonal_rhs": diag.rhs,
            "another_check": another.verdict,
            "another_lhs": another.lhs,
            "another_rhs": another.rhs,
        })
    all_hold = all(r["diagonal_check"] == HOLDS_EXACT
                   and r["another_check"] == HOLDS_EXACT for r in rows)
    return BatteryReport(seed=seed, count=count, rows=rows, all_hold=all_hold)
