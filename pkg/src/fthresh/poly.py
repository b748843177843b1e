"""Sparse multivariate polynomials over F_p with monomial orders.

A `RingContext` fixes the characteristic, the ordered variable names, the
monomial order and (for quotient rings) a tuple of defining relations; it is
immutable and freely shareable.  Polynomials are sparse term maps whose
coefficients are canonical residues in [0, p); ideals are canonicalized
generator tuples.  Everything here is a value: operations return fresh
objects and never mutate their arguments.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import exactnum
from .errors import PreconditionError, RingMismatchError

Exp = tuple[int, ...]

GREVLEX = "grevlex"
LEX = "lex"
# Internal block order used for elimination of the first variable; never
# reachable from session text.
ELIM1 = "elim1"

PUBLIC_ORDERS = (GREVLEX, LEX)
_ALL_ORDERS = (GREVLEX, LEX, ELIM1)

MAX_VARS = 8


# ---------------------------------------------------------------------------
# exponent vectors


def exp_add(u: Exp, v: Exp) -> Exp:
    return tuple(a + b for a, b in zip(u, v))


def exp_sub(u: Exp, v: Exp) -> Exp:
    return tuple(a - b for a, b in zip(u, v))


def exp_divides(u: Exp, v: Exp) -> bool:
    """True when x^u divides x^v."""
    return all(a <= b for a, b in zip(u, v))


def exp_lcm(u: Exp, v: Exp) -> Exp:
    return tuple(max(a, b) for a, b in zip(u, v))


def exp_degree(u: Exp) -> int:
    return sum(u)


def _grevlex_key(u: Exp):
    # Ascending key: higher total degree wins; ties go to the vector whose
    # last differing exponent is smaller.
    return (sum(u),) + tuple(-x for x in reversed(u))


def _lex_key(u: Exp):
    return u


def _elim1_key(u: Exp):
    return (u[0],) + _grevlex_key(u[1:])


_KEY_FNS = {GREVLEX: _grevlex_key, LEX: _lex_key, ELIM1: _elim1_key}


def order_key_fn(kind: str):
    """Key function: sorting by it ascending sorts monomials ascending."""
    try:
        return _KEY_FNS[kind]
    except KeyError:
        raise ValueError(f"unknown monomial order {kind!r}") from None


def order_compare(u: Exp, v: Exp, kind: str = GREVLEX) -> int:
    """-1, 0 or 1 as x^u <, =, > x^v in the given order."""
    if len(u) != len(v):
        raise ValueError("exponent vectors have different lengths")
    ku, kv = order_key_fn(kind)(u), order_key_fn(kind)(v)
    return (ku > kv) - (ku < kv)


# ---------------------------------------------------------------------------
# ring contexts

_TermData = tuple[tuple[Exp, int], ...]


def _canonical_terms(terms: Mapping[Exp, int], keyf) -> _TermData:
    return tuple(sorted(terms.items(), key=lambda t: keyf(t[0]), reverse=True))


class RingContext:
    """A presented ring F_p[x_1..x_d]/(relations) with a fixed monomial order."""

    __slots__ = ("p", "variables", "order", "relations_data", "fingerprint",
                 "_relations_cache")

    def __init__(self, p: int, variables: Sequence[str], order: str = GREVLEX,
                 relations_data: _TermData | tuple = (), _internal: bool = False):
        exactnum.validate_prime(p)
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if not _internal and len(variables) > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables are supported")
        allowed = _ALL_ORDERS if _internal else PUBLIC_ORDERS
        if order not in allowed:
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.variables = variables
        self.order = order
        self.relations_data = tuple(relations_data)
        self.fingerprint = (p, variables, order, self.relations_data)
        self._relations_cache: tuple[Polynomial, ...] | None = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def relations(self) -> tuple["Polynomial", ...]:
        if self._relations_cache is None:
            self._relations_cache = tuple(
                Polynomial(self, dict(data)) for data in self.relations_data)
        return self._relations_cache

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations_data

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        zero_exp = (0,) * self.nvars
        return Polynomial(self, {zero_exp: c} if c else {})

    def monomial(self, exp: Exp, coeff: int = 1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent vector {exp!r}")
        coeff %= self.p
        return Polynomial(self, {exp: coeff} if coeff else {})

    def variable(self, name_or_index) -> "Polynomial":
        i = (self.variables.index(name_or_index)
             if isinstance(name_or_index, str) else name_or_index)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self.monomial(exp)

    def poly(self, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]]) -> "Polynomial":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, int] = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp!r}")
            c = (acc.get(exp, 0) + c) % self.p
            if c:
                acc[exp] = c
            else:
                acc.pop(exp, None)
        return Polynomial(self, acc)

    def key_fn(self):
        return order_key_fn(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __repr__(self) -> str:
        base = f"F_{self.p}[{', '.join(self.variables)}; {self.order}]"
        if self.relations_data:
            rels = ", ".join(str(r) for r in self.relations)
            return f"{base}/({rels})"
        return base


def quotient_ring(base: RingContext, relations: Sequence["Polynomial"]) -> RingContext:
    """A new context presenting base/(relations); relations must be nonzero."""
    if not base.is_polynomial_ring:
        raise PreconditionError("relations must be attached to a polynomial ring")
    keyf = base.key_fn()
    data = []
    for r in relations:
        if r.ring.fingerprint != base.fingerprint:
            raise RingMismatchError("relation from a different ring")
        if r.is_zero:
            raise PreconditionError("zero relation")
        data.append(_canonical_terms(r.terms, keyf))
    return RingContext(base.p, base.variables, base.order, tuple(data))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial; `terms` maps exponent vectors to nonzero residues."""

    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: RingContext, terms: dict[Exp, int]):
        # Assumes canonical input; go through RingContext.poly otherwise.
        self.ring = ring
        self.terms = terms
        self._lead: Exp | None = None
        self._hash: int | None = None

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lead_exp(self) -> Exp:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.key_fn())
        return self._lead

    @property
    def lead_coeff(self) -> int:
        return self.terms[self.lead_exp]

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        keyf = self.ring.key_fn()
        return sorted(self.terms.items(), key=lambda t: keyf(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring.fingerprint != other.ring.fingerprint:
            raise RingMismatchError("operands live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        p = self.ring.p
        acc = dict(self.terms)
        for exp, c in other.terms.items():
            nc = (acc.get(exp, 0) + c) % p
            if nc:
                acc[exp] = nc
            else:
                acc.pop(exp, None)
        return Polynomial(self.ring, acc)

    def __neg__(self) -> "Polynomial":
        p = self.ring.p
        return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        p = self.ring.p
        acc: dict[Exp, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = exp_add(u, v)
                c = (acc.get(w, 0) + a * b) % p
                if c:
                    acc[w] = c
                else:
                    acc.pop(w, None)
        return Polynomial(self.ring, acc)

    def mul_term(self, exp: Exp, coeff: int) -> "Polynomial":
        p = self.ring.p
        coeff %= p
        if not coeff:
            return self.ring.zero()
        return Polynomial(self.ring, {
            exp_add(u, exp): (c * coeff) % p for u, c in self.terms.items()})

    def scale(self, coeff: int) -> "Polynomial":
        return self.mul_term((0,) * self.ring.nvars, coeff)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        inv = exactnum.fp_inv(self.lead_coeff, self.ring.p)
        return self.scale(inv)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """Term-wise q-th power; q must be a power of the characteristic."""
        if not is_power_of(q, self.ring.p):
            raise PreconditionError(
                f"{q} is not a power of the characteristic {self.ring.p}")
        return Polynomial(self.ring, {
            tuple(q * e for e in exp): c for exp, c in self.terms.items()})

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial)
                and self.ring.fingerprint == other.ring.fingerprint
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.fingerprint, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            if c != 1 or not any(exp):
                factors.append(str(c))
            for name, e in zip(self.ring.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self} over {self.ring!r}>"


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """Finitely generated ideal: canonicalized nonzero generators."""

    __slots__ = ("ring", "generators", "fingerprint")

    def __init__(self, ring: RingContext, generators: Sequence[Polynomial]):
        keyf = ring.key_fn()
        seen: dict[_TermData, Polynomial] = {}
        for g in generators:
            if g.ring.fingerprint != ring.fingerprint:
                raise RingMismatchError("generator from a different ring")
            if g.is_zero:
                continue
            data = _canonical_terms(g.terms, keyf)
            seen.setdefault(data, g)
        ordered = sorted(
            seen.items(), key=lambda item: keyf(item[1].lead_exp), reverse=True)
        self.ring = ring
        self.generators = tuple(g for _, g in ordered)
        self.fingerprint = (ring.fingerprint, tuple(d for d, _ in ordered))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other) -> bool:
        """Equality of generating sets (not of the ideals they generate)."""
        return isinstance(other, Ideal) and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring.fingerprint != other.ring.fingerprint:
            raise RingMismatchError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"
