"""Closure decision procedures for parameter ideals.

Tight closure: a verified witness x^(q0-1) in I^[q0] (x the product of the
parameter generators) certifies I is NOT contained in J*; exhausting the
search is only ever reported as inconclusive, never as containment.
Integral closure: exact verdicts come from the Newton-polyhedron membership
test on monomial input; the general path can certify non-containment from a
nu value exceeding d*q under F-purity, and is otherwise inconclusive.

The theorem hypotheses the tool cannot check (domain, analytic
irreducibility, formal equidimensionality) are echoed as flags on every
verdict; callers may additionally assert hypotheses they have verified by
hand, and the assertion is recorded verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PreconditionError
from .frobenius import bracket_power, nu_sequence
from .groebner import Budget, groebner_basis, ideal_member, normal_form, radical_member
from .multiplicity import parameter_check
from .newton import MonomialIdeal, newton_member, newton_polyhedron
from .poly import GREVLEX, Ideal, LEX, Polynomial, RingContext

NOT_IN_TIGHT = "not_in_tight_closure"
INCONCLUSIVE_TIGHT = "inconclusive_tight"
IN_INTEGRAL = "in_integral_closure"
NOT_IN_INTEGRAL = "not_in_integral_closure"
INCONCLUSIVE_INTEGRAL = "inconclusive_integral"


@dataclass(frozen=True)
class TightCertificate:
    q0: int
    witness: str
    verified: bool


@dataclass
class ClosureVerdict:
    kind: str
    e_max: int
    hypothesis_flags: tuple[str, ...]
    certificate: TightCertificate | None = None
    nu_entries: list[tuple[int, int, int]] | None = None
    witness_q: int | None = None
    membership: list[tuple[tuple, bool]] | None = None
    notes: tuple[str, ...] = ()


def _reorder_ring(ring: RingContext, order: str) -> RingContext:
    from .poly import _canonical_terms  # canonical term data under the new order
    base = RingContext(ring.p, ring.variables, order, ())
    keyf = base.key_fn()
    data = tuple(_canonical_terms(dict(terms), keyf) for terms in ring.relations_data)
    return RingContext(ring.p, ring.variables, order, data)


def _transport(f: Polynomial, target: RingContext) -> Polynomial:
    return target.poly(dict(f.terms))


def _recheck_other_order(f: Polynomial, ideal: Ideal, budget: Budget) -> bool:
    """Independent membership recheck under the other monomial order."""
    other = LEX if f.ring.order == GREVLEX else GREVLEX
    ring2 = _reorder_ring(f.ring, other)
    ideal2 = Ideal(ring2, [_transport(g, ring2) for g in ideal.generators])
    return ideal_member(_transport(f, ring2), ideal2, budget)


def _tight_flags(asserted: Sequence[str]) -> tuple[str, ...]:
    flags = ["excellent: unverified", "analytically irreducible: unverified",
             "local domain: unverified"]
    flags += [f"asserted by caller: {a}" for a in asserted]
    return tuple(flags)


def tight_certificate(J: Ideal, I: Ideal, e_max: int, *,
                      budget: Budget | int | None = None,
                      asserted_hypotheses: Sequence[str] = ()) -> ClosureVerdict:
    """Search q0 = p, .., p^e_max for the witness x^(q0-1) in I^[q0].  A hit
    is re-verified under the other monomial order before it is reported."""
    if e_max < 1:
        raise PreconditionError("e_max must be at least 1")
    budget = Budget.ensure(budget)
    parameter_check(J, budget)
    from .groebner import ideal_subset
    if not ideal_subset(J, I, budget):
        raise PreconditionError("tight-closure test requires J contained in I")
    ring = J.ring
    x = ring.one()
    for g in J.generators:
        x = x * g
    flags = _tight_flags(asserted_hypotheses)
    for e0 in range(1, e_max + 1):
        q0 = ring.p**e0
        candidate = x ** (q0 - 1)
        if ideal_member(candidate, bracket_power(I, q0), budget):
            verified = _recheck_other_order(candidate, bracket_power(I, q0), budget)
            cert = TightCertificate(
                q0=q0,
                witness=f"({x})^{q0 - 1} lies in I^[{q0}]",
                verified=verified,
            )
            return ClosureVerdict(kind=NOT_IN_TIGHT, e_max=e_max,
                                  hypothesis_flags=flags, certificate=cert)
    return ClosureVerdict(
        kind=INCONCLUSIVE_TIGHT, e_max=e_max, hypothesis_flags=flags,
        notes=(f"consistent with I contained in J* up to q0 = {ring.p**e_max}",))


def frational_probe(J: Ideal, candidates: Sequence[tuple[str, Ideal]],
                    e_max: int, *, budget: Budget | int | None = None,
                    asserted_hypotheses: Sequence[str] = ()) -> list[tuple[str, ClosureVerdict]]:
    """Run the tight-closure certificate search against each candidate
    I strictly containing J, reporting the nu_J^I sequence alongside: entries
    with nu < d(q-1) already refute containment in the tight closure."""
    budget = Budget.ensure(budget)
    d = parameter_check(J, budget)
    from .groebner import ideal_subset
    results = []
    for name, I in candidates:
        if groebner_basis(I, budget).is_unit_ideal:
            raise PreconditionError(f"candidate {name} is the unit ideal")
        if not ideal_subset(J, I, budget):
            raise PreconditionError(f"candidate {name} does not contain J")
        if ideal_subset(I, J, budget):
            raise PreconditionError(f"candidate {name} equals J; need I strictly larger")
        verdict = tight_certificate(J, I, e_max, budget=budget,
                                    asserted_hypotheses=asserted_hypotheses)
        seq = nu_sequence(J, I, e_max, budget=budget)
        verdict.nu_entries = list(seq.entries)
        drops = [q for _, q, n in seq.entries if n < d * (q - 1)]
        if drops:
            verdict.notes += (
                f"nu_J^I({drops[0]}) < d(q-1): inconsistent with I in J*",)
        else:
            verdict.notes += ("nu_J^I(q) >= d(q-1) throughout the tested range",)
        results.append((name, verdict))
    return results


def integral_test(I: Ideal, J: Ideal, e_max: int, *,
                  assert_f_pure: bool = False,
                  budget: Budget | int | None = None) -> ClosureVerdict:
    """Decide containment of I in the integral closure of the parameter
    ideal J.  The containment question is unchanged by replacing I with
    I + J, and the threshold criterion needs J inside the tested ideal, so
    that normalization is always applied and recorded."""
    if e_max < 1:
        raise PreconditionError("e_max must be at least 1")
    budget = Budget.ensure(budget)
    d = parameter_check(J, budget)
    for g in I.generators:
        if not radical_member(g, J, budget):
            raise PreconditionError(
                f"integral test requires I inside the radical of J; {g} is not")
    ring = I.ring
    flags = ("formally equidimensional: unverified",)
    notes = ("tested I + J; containment in the integral closure is unchanged",)
    normalized = I + J

    monomial = (ring.is_polynomial_ring
                and all(g.is_monomial for g in I.generators)
                and all(g.is_monomial for g in J.generators))
    if monomial:
        P = newton_polyhedron(MonomialIdeal.from_ideal(J))
        membership = [(g.lead_exp, newton_member(g.lead_exp, P))
                      for g in I.generators]
        if all(ok for _, ok in membership):
            return ClosureVerdict(kind=IN_INTEGRAL, e_max=e_max,
                                  hypothesis_flags=flags, membership=membership,
                                  notes=notes + ("exact polyhedral verdict",))
        seq = nu_sequence(normalized, J, e_max, budget=budget, check_radical=False)
        witness = next((q for _, q, n in seq.entries if n > d * q), None)
        return ClosureVerdict(kind=NOT_IN_INTEGRAL, e_max=e_max,
                              hypothesis_flags=flags, membership=membership,
                              nu_entries=list(seq.entries), witness_q=witness,
                              notes=notes + ("exact polyhedral verdict",))

    seq = nu_sequence(normalized, J, e_max, assert_f_pure=assert_f_pure,
                      budget=budget, check_radical=False)
    witness = next((q for _, q, n in seq.entries if n > d * q), None)
    if witness is not None and seq.f_pure_assumed:
        return ClosureVerdict(
            kind=NOT_IN_INTEGRAL, e_max=e_max, hypothesis_flags=flags,
            nu_entries=list(seq.entries), witness_q=witness,
            notes=notes + (
                f"nu({witness}) > d*q with nu(q)/q nondecreasing under F-purity",))
    if witness is not None:
        return ClosureVerdict(
            kind=INCONCLUSIVE_INTEGRAL, e_max=e_max, hypothesis_flags=flags,
            nu_entries=list(seq.entries), witness_q=witness,
            notes=notes + (
                "nu exceeds d*q but the ring is not known to be F-pure; "
                "no certified verdict",))
    return ClosureVerdict(
        kind=INCONCLUSIVE_INTEGRAL, e_max=e_max, hypothesis_flags=flags,
        nu_entries=list(seq.entries),
        notes=notes + (
            "nu(q) stayed at most d*q on the tested range; containment is "
            "plausible but a finite search cannot prove it -- use the exact "
            "monomial path when available",))
