"""Frobenius bracket powers, ideal powers, the nu invariant and F-threshold
estimates.

nu(a, J, q) is the largest r with a^r not contained in the bracket power
J^[q].  It is computed by the frontier algorithm: keep the normal forms of
r-fold products of generators of a modulo a basis of J^[q] (plus relations),
and drop any product whose normal form vanishes -- all its multiples stay
absorbed.  The search is incremental in r because the frontier at r is
needed to build r+1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import PreconditionError, RingMismatchError
from .groebner import Budget, groebner_basis, normal_form, radical_member
from .poly import Ideal, Polynomial, RingContext, is_power_of


def power_exponent(q: int, p: int) -> int:
    """The e with q == p^e; raises when q is not a power of p."""
    if not is_power_of(q, p):
        raise PreconditionError(f"{q} is not a power of the characteristic {p}")
    e = 0
    while q > 1:
        q //= p
        e += 1
    return e


def bracket_power(ideal: Ideal, q: int) -> Ideal:
    """The ideal generated by the q-th powers of the generators, q = p^e."""
    power_exponent(q, ideal.ring.p)
    return Ideal(ideal.ring, [g.frobenius(q) for g in ideal.generators])


def ideal_power(ideal: Ideal, r: int) -> Ideal:
    """All r-fold products of generators, deduplicated; the 0th power is (1)."""
    if r < 0:
        raise PreconditionError("negative ideal power")
    ring = ideal.ring
    if r == 0:
        return Ideal(ring, [ring.one()])
    gens = []
    for combo in combinations_with_replacement(ideal.generators, r):
        prod = ring.one()
        for g in combo:
            prod = prod * g
        gens.append(prod)
    return Ideal(ring, gens)


def _check_pair(a: Ideal, J: Ideal) -> None:
    if a.ring.fingerprint != J.ring.fingerprint:
        raise RingMismatchError("numerator and denominator ideals in different rings")
    if a.is_zero:
        raise PreconditionError("nu needs a nonzero numerator ideal")
    if any(g.is_constant for g in a.generators):
        raise PreconditionError("nu needs a proper numerator ideal")


_RADICAL_OK: set[tuple] = set()
_NU_CACHE: dict[tuple, int] = {}
_LOCK = threading.Lock()


def clear_caches() -> None:
    with _LOCK:
        _RADICAL_OK.clear()
        _NU_CACHE.clear()


def _require_radical(a: Ideal, J: Ideal, budget: Budget) -> None:
    key = (a.fingerprint, J.fingerprint)
    with _LOCK:
        if key in _RADICAL_OK:
            return
    for g in a.generators:
        if not radical_member(g, J, budget):
            raise PreconditionError(
                f"nu undefined: generator {g} is not in the radical of the denominator")
    with _LOCK:
        _RADICAL_OK.add(key)


def _frontier(gens: list[Polynomial], gb, budget: Budget,
              r_cap: int | None) -> int:
    frontier: set[Polynomial] = set()
    for g in gens:
        h = normal_form(g, gb, budget)
        if not h.is_zero:
            frontier.add(h)
    if not frontier:
        return 0
    r = 1
    while True:
        new: set[Polynomial] = set()
        for x in frontier:
            for g in gens:
                budget.spend()
                h = normal_form(x * g, gb, budget)
                if not h.is_zero:
                    new.add(h)
        if not new:
            return r
        r += 1
        if r_cap is not None and r > r_cap:
            raise PreconditionError(
                "frontier exceeded the finiteness bound; a is not contained "
                "in the radical of the denominator")
        frontier = new


def nu(a: Ideal, J: Ideal, q: int, *, budget: Budget | int | None = None,
       check_radical: bool = True) -> int:
    """max{r : a^r not contained in J^[q] + relations}; 0 when a is absorbed."""
    _check_pair(a, J)
    ring = a.ring
    power_exponent(q, ring.p)
    budget = Budget.ensure(budget)
    key = (a.fingerprint, J.fingerprint, q)
    with _LOCK:
        if key in _NU_CACHE:
            return _NU_CACHE[key]
    if check_radical:
        _require_radical(a, J, budget)
    gens = list(a.generators)
    if q == 1:
        # Base level: also yields N = nu+1, the smallest power with a^N in J.
        value = _frontier(gens, groebner_basis(J, budget), budget, None)
    else:
        n_min = nu(a, J, 1, budget=budget, check_radical=False) + 1
        cap = n_min * (len(gens) * (q - 1) + 1) - 1
        gb = groebner_basis(bracket_power(J, q), budget)
        value = _frontier(gens, gb, budget, cap)
    with _LOCK:
        _NU_CACHE[key] = value
    return value


@dataclass
class NuSequence:
    """Computed nu values for q = p, p^2, ..., p^e_max."""

    a: Ideal
    J: Ideal
    entries: list[tuple[int, int, int]]  # (e, q, nu)
    f_pure_assumed: bool

    @property
    def ring(self) -> RingContext:
        return self.a.ring

    def ratios(self) -> list[Fraction]:
        return [Fraction(n, q) for _, q, n in self.entries]


def nu_sequence(a: Ideal, J: Ideal, e_max: int, *,
                assert_f_pure: bool = False,
                budget: Budget | int | None = None,
                check_radical: bool = True) -> NuSequence:
    """nu values for e = 1..e_max.  f_pure_assumed is set automatically for
    polynomial rings (regular F-finite rings are F-pure); for quotients it
    must be asserted by the caller, e.g. after a Fedder check."""
    if e_max < 1:
        raise PreconditionError("e_max must be at least 1")
    _check_pair(a, J)
    budget = Budget.ensure(budget)
    entries = []
    for e in range(1, e_max + 1):
        q = a.ring.p ** e
        entries.append((e, q, nu(a, J, q, budget=budget,
                                 check_radical=check_radical and e == 1)))
    f_pure = a.ring.is_polynomial_ring or assert_f_pure
    return NuSequence(a=a, J=J, entries=entries, f_pure_assumed=f_pure)


@dataclass(frozen=True)
class ThresholdEstimate:
    """Bounds and estimates for the F-threshold derived from a NuSequence.

    sup_lower is a certified lower bound only under F-purity, where nu(q)/q
    is nondecreasing in q.  The affine fit through the last two entries is a
    heuristic.  upper_hint is certified only for principal numerators, where
    (nu(q)+1)/q is nonincreasing.  exact is filled by the polyhedral or
    formula paths, never from the sequence itself.
    """

    sup_lower: Fraction
    sup_certified: bool
    affine_fit: Fraction | None
    upper_hint: Fraction | None
    upper_certified: bool
    exact: Fraction | None = None
    exact_provenance: str = "none"
    f_pure_assumed: bool = False


def threshold_estimate(seq: NuSequence) -> ThresholdEstimate:
    if not seq.entries:
        raise PreconditionError("empty nu sequence")
    ratios = seq.ratios()
    sup_lower = max(ratios)
    affine_fit = None
    if len(seq.entries) >= 2:
        (_, q1, n1), (_, q2, n2) = seq.entries[-2], seq.entries[-1]
        affine_fit = Fraction(n2 - n1, q2 - q1)
    upper_hint = None
    upper_certified = False
    if len(seq.a.generators) == 1:
        upper_hint = min(Fraction(n + 1, q) for _, q, n in seq.entries)
        upper_certified = True
    return ThresholdEstimate(
        sup_lower=sup_lower,
        sup_certified=seq.f_pure_assumed,
        affine_fit=affine_fit,
        upper_hint=upper_hint,
        upper_certified=upper_certified,
        f_pure_assumed=seq.f_pure_assumed,
    )


def fedder_is_f_pure(ring: RingContext) -> bool:
    """Fedder's criterion at the origin for hypersurface presentations:
    F_p[x]/(f) is F-pure iff f^(p-1) is outside (x_1^p, ..., x_d^p)."""
    if ring.is_polynomial_ring:
        return True
    if len(ring.relations_data) != 1:
        raise PreconditionError("Fedder check implemented for hypersurfaces only")
    f = ring.relations[0]
    power = f ** (ring.p - 1)
    return any(all(e <= ring.p - 1 for e in exp) for exp in power.terms)
