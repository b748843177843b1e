"""Colengths and Hilbert-Samuel multiplicities.

Parameter ideals in Cohen-Macaulay presentations get the exact colength
multiplicity; zero-dimensional monomial ideals in polynomial rings get the
exact covolume multiplicity; everything else is reported only as the
normalized length sequence d! * len(R/a^n) / n^d with a difference-table
extrapolation, explicitly tagged as an estimate.  The tool can verify
Cohen-Macaulayness only for polynomial and hypersurface presentations; other
quotients are flagged, never silently certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import PreconditionError
from .frobenius import ideal_power
from .groebner import Budget, dimension, ring_dimension, standard_monomials
from .newton import MonomialIdeal, covolume_mult
from .poly import Ideal

METHOD_COLENGTH = "colength_CM"
METHOD_COVOLUME = "covolume_monomial"
METHOD_ESTIMATE = "hs_limit_estimate"


@dataclass(frozen=True)
class MultiplicityReport:
    ideal: str
    colength: int
    multiplicity: Fraction
    method: str
    assumptions: tuple[str, ...]


def colength(ideal: Ideal, budget: Budget | int | None = None) -> int:
    """Vector-space dimension of R/(ideal + relations); zero-dimensional only."""
    return len(standard_monomials(ideal, budget))


def cm_flags(ideal_ring) -> tuple[str, ...]:
    nrel = len(ideal_ring.relations_data)
    if nrel == 0:
        return ("Cohen-Macaulay: verified (polynomial ring)",)
    if nrel == 1:
        return ("Cohen-Macaulay: verified (hypersurface)",)
    return ("Cohen-Macaulay: assumed, not verifiable for this presentation",)


def parameter_check(J: Ideal, budget: Budget | int | None = None) -> int:
    """Validate that J is generated by a full system of parameters; returns
    the ring dimension."""
    d = ring_dimension(J.ring, budget)
    if len(J.generators) != d:
        raise PreconditionError(
            f"not a full system of parameters: {len(J.generators)} generators "
            f"in a {d}-dimensional ring")
    if d > 0 and dimension(J, budget) != 0:
        raise PreconditionError(
            "not a system of parameters: quotient is not zero-dimensional")
    return d


def mult_parameter(J: Ideal, budget: Budget | int | None = None) -> MultiplicityReport:
    """Multiplicity of a parameter ideal as its colength; exact in
    Cohen-Macaulay presentations, flagged otherwise."""
    parameter_check(J, budget)
    ell = colength(J, budget)
    return MultiplicityReport(
        ideal=str(J),
        colength=ell,
        multiplicity=Fraction(ell),
        method=METHOD_COLENGTH,
        assumptions=cm_flags(J.ring) + ("parameter ideal: verified by dimension check",),
    )


def multiplicity_exact(a: Ideal, budget: Budget | int | None = None) -> MultiplicityReport | None:
    """Best exact multiplicity available for a zero-dimensional ideal, or
    None when only the limit estimate applies."""
    ring = a.ring
    if ring.is_polynomial_ring and all(g.is_monomial for g in a.generators):
        report = covolume_mult(MonomialIdeal.from_ideal(a))
        return MultiplicityReport(
            ideal=str(a),
            colength=report.colength,
            multiplicity=report.multiplicity,
            method=METHOD_COVOLUME,
            assumptions=(),
        )
    if len(a.generators) == ring_dimension(ring, budget):
        return mult_parameter(a, budget)
    return None


@dataclass(frozen=True)
class HilbertSamuelEstimate:
    ring_dim: int
    lengths: tuple[int, ...]            # len(R/a^n) for n = 1..n_max
    normalized: tuple[Fraction, ...]    # d! * len / n^d
    extrapolation: Fraction | None
    stabilized: bool


def hs_estimate(a: Ideal, n_max: int,
                budget: Budget | int | None = None) -> HilbertSamuelEstimate:
    """Normalized length sequence whose limit is e(a), plus the difference-
    table extrapolation once the d-th differences of len(R/a^n) stabilize."""
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    budget = Budget.ensure(budget)
    if dimension(a, budget) != 0:
        raise PreconditionError("Hilbert-Samuel estimate requires a zero-dimensional ideal")
    d = ring_dimension(a.ring, budget)
    lengths = [colength(ideal_power(a, n), budget) for n in range(1, n_max + 1)]
    normalized = tuple(Fraction(factorial(d) * ell, n**d)
                       for n, ell in enumerate(lengths, start=1))
    diffs = [0] + lengths
    for _ in range(d):
        diffs = [b - a_ for a_, b in zip(diffs, diffs[1:])]
    extrapolation = None
    stabilized = False
    if diffs:
        if len(diffs) == 1 or diffs[-1] == diffs[-2]:
            extrapolation = Fraction(diffs[-1])
            stabilized = True
    return HilbertSamuelEstimate(
        ring_dim=d,
        lengths=tuple(lengths),
        normalized=normalized,
        extrapolation=extrapolation,
        stabilized=stabilized,
    )
