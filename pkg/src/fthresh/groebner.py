"""Buchberger engine and the decision procedures built on it.

Quotient rings are handled by adjoining the ring's relations to every ideal
before computing a basis, so membership and normal forms are automatically
taken modulo the presentation.  Reduced bases are cached by the canonical
generator fingerprint; results are immutable and safe to share.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from itertools import combinations, product

from .errors import BudgetExceededError, PreconditionError, RingMismatchError
from .exactnum import fp_inv
from .poly import (ELIM1, Exp, GREVLEX, Ideal, Polynomial, RingContext,
                   exp_add, exp_degree, exp_divides, exp_lcm, exp_sub)

DEFAULT_BUDGET = 50_000_000


class Budget:
    """Mutable step counter; raises once the configured limit is exhausted."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        if limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"computation budget exceeded ({self.limit} steps)")

    @staticmethod
    def ensure(budget: "Budget | int | None") -> "Budget":
        if budget is None:
            return Budget()
        if isinstance(budget, int):
            return Budget(budget)
        return budget


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic basis, elements sorted by leading monomial descending."""

    ring: RingContext
    elements: tuple[Polynomial, ...]
    source: tuple

    @property
    def lead_exps(self) -> tuple[Exp, ...]:
        return tuple(g.lead_exp for g in self.elements)

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.is_constant and not g.is_zero for g in self.elements)


@dataclass(frozen=True)
class StandardMonomials:
    """Staircase complement of a zero-dimensional leading-term ideal."""

    ring: RingContext
    exponents: tuple[Exp, ...]

    def __len__(self) -> int:
        return len(self.exponents)

    def monomials(self) -> tuple[Polynomial, ...]:
        return tuple(self.ring.monomial(e) for e in self.exponents)


# ---------------------------------------------------------------------------
# reduction

def _neg_key(key: tuple) -> tuple:
    return tuple(-x for x in key)


def reduce_full(f: Polynomial, reducers: list[Polynomial],
                budget: Budget | None = None) -> Polynomial:
    """Canonical remainder of f under the (monic) reducers: no surviving term
    is divisible by any reducer's leading monomial."""
    if f.is_zero or not reducers:
        return f
    budget = Budget.ensure(budget)
    ring = f.ring
    p = ring.p
    keyf = ring.key_fn()
    leads = [(g.lead_exp, g.terms) for g in reducers]
    work = dict(f.terms)
    out: dict[Exp, int] = {}
    heap = [(_neg_key(keyf(u)), u) for u in work]
    heapq.heapify(heap)
    while heap:
        _, u = heapq.heappop(heap)
        c = work.pop(u, 0)
        if not c:
            continue
        for le, gterms in leads:
            if exp_divides(le, u):
                budget.spend()
                shift = exp_sub(u, le)
                for v, gc in gterms.items():
                    if v == le:
                        continue
                    w = exp_add(v, shift)
                    nc = (work.get(w, 0) - c * gc) % p
                    if nc:
                        if w not in work:
                            heapq.heappush(heap, (_neg_key(keyf(w)), w))
                        work[w] = nc
                    else:
                        work.pop(w, None)
                break
        else:
            out[u] = c
    return Polynomial(ring, out)


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = exp_lcm(f.lead_exp, g.lead_exp)
    # Both inputs are monic.
    return f.mul_term(exp_sub(lcm, f.lead_exp), 1) - g.mul_term(
        exp_sub(lcm, g.lead_exp), 1)


def _update(G: list[Polynomial], pairs: set[tuple[int, int]],
            f: Polynomial) -> None:
    """Add monic f to the working basis with Gebauer-Moeller pair pruning."""
    lmf = f.lead_exp
    lm = [g.lead_exp for g in G]
    k = len(G)

    def lcmf(i: int) -> Exp:
        return exp_lcm(lm[i], lmf)

    # Chain criterion: drop (i, j) when lm(f) divides lcm(i, j) strictly.
    survivors = set()
    for i, j in pairs:
        lij = exp_lcm(lm[i], lm[j])
        if (not exp_divides(lmf, lij)) or lij == lcmf(i) or lij == lcmf(j):
            survivors.add((i, j))
    pairs.clear()
    pairs.update(survivors)

    # New pairs, minimalized by their lcm, product criterion last.
    by_lcm: dict[Exp, list[int]] = {}
    for i in range(k):
        by_lcm.setdefault(lcmf(i), []).append(i)
    keyf = f.ring.key_fn()
    minimal: list[Exp] = []
    for L in sorted(by_lcm, key=keyf):
        if all(not exp_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        if any(lcmf(i) == exp_add(lm[i], lmf) for i in by_lcm[L]):
            continue  # coprime leading terms: S-pair reduces to zero
        pairs.add((min(by_lcm[L]), k))
    G.append(f)


def _interreduce(G: list[Polynomial], budget: Budget) -> list[Polynomial]:
    keyf = G[0].ring.key_fn() if G else None
    # Minimalize: drop elements whose lead is divisible by another lead.
    minimal: list[Polynomial] = []
    for g in sorted(G, key=lambda h: keyf(h.lead_exp)):
        if all(not exp_divides(h.lead_exp, g.lead_exp) for h in minimal):
            minimal.append(g)
    # Tail-reduce each against the others until stable.
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            r = reduce_full(g, others, budget).monic()
            if r != g:
                minimal[i] = r
                changed = True
    minimal.sort(key=lambda h: keyf(h.lead_exp), reverse=True)
    return minimal


_GB_CACHE: dict[tuple, GroebnerBasis] = {}
_GB_LOCK = threading.Lock()


def clear_caches() -> None:
    with _GB_LOCK:
        _GB_CACHE.clear()


def groebner_basis(ideal: Ideal, budget: Budget | int | None = None) -> GroebnerBasis:
    """Reduced monic basis of ideal + ring relations; cached and canonical."""
    key = ideal.fingerprint
    with _GB_LOCK:
        cached = _GB_CACHE.get(key)
    if cached is not None:
        return cached
    budget = Budget.ensure(budget)
    ring = ideal.ring
    gens = list(ideal.generators) + list(ring.relations)
    keyf = ring.key_fn()

    G: list[Polynomial] = []
    pairs: set[tuple[int, int]] = set()
    for f in sorted(gens, key=lambda h: keyf(h.lead_exp)):
        h = reduce_full(f, G, budget)
        if not h.is_zero:
            _update(G, pairs, h.monic())
    while pairs:
        budget.spend()
        i, j = min(pairs, key=lambda ij: (
            keyf(exp_lcm(G[ij[0]].lead_exp, G[ij[1]].lead_exp)), ij))
        pairs.discard((i, j))
        s = _spoly(G[i], G[j])
        h = reduce_full(s, G, budget)
        if not h.is_zero:
            _update(G, pairs, h.monic())

    result = GroebnerBasis(ring=ring, elements=tuple(_interreduce(G, budget)),
                           source=key)
    with _GB_LOCK:
        _GB_CACHE[key] = result
    return result


def normal_form(f: Polynomial, basis: GroebnerBasis | Ideal,
                budget: Budget | int | None = None) -> Polynomial:
    if isinstance(basis, Ideal):
        basis = groebner_basis(basis, budget)
    if f.ring.fingerprint != basis.ring.fingerprint:
        raise RingMismatchError("polynomial and basis live in different rings")
    return reduce_full(f, list(basis.elements), Budget.ensure(budget))


def ideal_member(f: Polynomial, ideal: Ideal,
                 budget: Budget | int | None = None) -> bool:
    return normal_form(f, ideal, budget).is_zero


def ideal_subset(a: Ideal, b: Ideal, budget: Budget | int | None = None) -> bool:
    gb = groebner_basis(b, budget)
    return all(normal_form(g, gb, budget).is_zero for g in a.generators)


# ---------------------------------------------------------------------------
# ring extensions for elimination tricks

_TAG = "~t"


def _extend_ring(ring: RingContext, *, prepend: bool, order: str) -> RingContext:
    variables = ((_TAG,) + ring.variables) if prepend else (ring.variables + (_TAG,))

    def lift_exp(e: Exp) -> Exp:
        return ((0,) + e) if prepend else (e + (0,))

    ext = RingContext(ring.p, variables, order, (), _internal=True)
    keyf = ext.key_fn()
    data = []
    for rel_terms in ring.relations_data:
        lifted = {lift_exp(e): c for e, c in rel_terms}
        data.append(tuple(sorted(lifted.items(), key=lambda t: keyf(t[0]),
                                 reverse=True)))
    return RingContext(ring.p, variables, order, tuple(data), _internal=True)


def _lift(f: Polynomial, ext: RingContext, *, prepend: bool) -> Polynomial:
    if prepend:
        return Polynomial(ext, {(0,) + e: c for e, c in f.terms.items()})
    return Polynomial(ext, {e + (0,): c for e, c in f.terms.items()})


def radical_member(f: Polynomial, ideal: Ideal,
                   budget: Budget | int | None = None) -> bool:
    """True iff some power of f lies in ideal + relations (Rabinowitsch)."""
    budget = Budget.ensure(budget)
    if f.is_zero:
        return True
    ext = _extend_ring(ideal.ring, prepend=False, order=GREVLEX)
    t = ext.variable(ext.nvars - 1)
    gens = [_lift(g, ext, prepend=False) for g in ideal.generators]
    gens.append(ext.one() - t * _lift(f, ext, prepend=False))
    gb = groebner_basis(Ideal(ext, gens), budget)
    return gb.is_unit_ideal


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient g/f when f divides g exactly in the ambient polynomial ring."""
    if f.is_zero:
        raise PreconditionError("division by the zero polynomial")
    ring = g.ring
    inv_lc = fp_inv(f.lead_coeff, ring.p)
    quotient: dict[Exp, int] = {}
    r = g
    while not r.is_zero:
        if not exp_divides(f.lead_exp, r.lead_exp):
            raise PreconditionError("not an exact multiple")
        shift = exp_sub(r.lead_exp, f.lead_exp)
        c = (r.lead_coeff * inv_lc) % ring.p
        quotient[shift] = c
        r = r - f.mul_term(shift, c)
    return ring.poly(quotient)


def ideal_colon(ideal: Ideal, f: Polynomial,
                budget: Budget | int | None = None) -> Ideal:
    """Generators of {g : g*f in ideal + relations}, via tag-variable
    elimination of (ideal + relations) intersected with (f)."""
    budget = Budget.ensure(budget)
    if f.is_zero:
        raise PreconditionError("colon by the zero polynomial")
    ring = ideal.ring
    ext = _extend_ring(ring, prepend=True, order=ELIM1)
    # Intersection happens in the ambient polynomial ring: drop relations
    # from the extension and add them to the left factor instead.
    ext_free = RingContext(ext.p, ext.variables, ext.order, (), _internal=True)
    t = ext_free.variable(0)
    one_minus_t = ext_free.one() - t
    gens = [t * _lift(g, ext_free, prepend=True)
            for g in list(ideal.generators) + list(ring.relations)]
    gens.append(one_minus_t * _lift(f, ext_free, prepend=True))
    gb = groebner_basis(Ideal(ext_free, gens), budget)
    intersection = [g for g in gb.elements if g.lead_exp[0] == 0]
    projected = [Polynomial(ring, {e[1:]: c for e, c in g.terms.items()})
                 for g in intersection]
    return Ideal(ring, [exact_divide(g, f) for g in projected])


# ---------------------------------------------------------------------------
# dimension and staircases


def dimension(ideal: Ideal, budget: Budget | int | None = None) -> int:
    """Krull dimension of R/(ideal + relations) via independent variable sets."""
    gb = groebner_basis(ideal, budget)
    if gb.is_unit_ideal:
        raise PreconditionError("unit ideal has no dimension")
    supports = [frozenset(i for i, e in enumerate(exp) if e)
                for exp in gb.lead_exps]
    n = gb.ring.nvars
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    raise AssertionError("unreachable: empty set is always independent")


def ring_dimension(ring: RingContext, budget: Budget | int | None = None) -> int:
    """Krull dimension of the presented ring itself."""
    return dimension(Ideal(ring, []), budget)


def standard_monomials(ideal: Ideal,
                       budget: Budget | int | None = None) -> StandardMonomials:
    """Finite staircase complement of the leading-term ideal; its cardinality
    is the colength of ideal + relations."""
    gb = groebner_basis(ideal, budget)
    if dimension(ideal, budget) != 0:
        raise PreconditionError("standard monomials require a zero-dimensional ideal")
    ring = gb.ring
    n = ring.nvars
    leads = gb.lead_exps
    bounds = []
    for i in range(n):
        pure = [exp[i] for exp in leads
                if all(e == 0 for j, e in enumerate(exp) if j != i)]
        bounds.append(min(pure))
    keyf = ring.key_fn()
    found = [exp for exp in product(*(range(b) for b in bounds))
             if not any(exp_divides(le, exp) for le in leads)]
    found.sort(key=keyf)
    return StandardMonomials(ring=ring, exponents=tuple(found))


def colength(ideal: Ideal, budget: Budget | int | None = None) -> int:
    return len(standard_monomials(ideal, budget))
