"""Exact polyhedral engine for monomial ideals.

Works with staircase data (minimal generator antichains) and the Newton
polyhedron P(a) = conv(generators) + R^d_{>=0}, described by an irredundant
list of rational facet normals w with P = {u >= 0 : <w, u> >= 1 for all w}.
Everything is exact: Fraction coordinates, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import factorial

from .errors import BudgetExceededError, PreconditionError
from .poly import Exp, Ideal, exp_divides

MAX_POLYHEDRON_DIM = 4


def _dot(w, u) -> Fraction:
    return sum((wi * ui for wi, ui in zip(w, u)), Fraction(0))


def _minimal_antichain(exps) -> tuple[Exp, ...]:
    exps = sorted(set(tuple(e) for e in exps))
    return tuple(u for u in exps
                 if not any(v != u and exp_divides(v, u) for v in exps))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    dim: int
    gens: tuple[Exp, ...]

    @staticmethod
    def from_exponents(dim: int, exps) -> "MonomialIdeal":
        exps = [tuple(e) for e in exps]
        for e in exps:
            if len(e) != dim or any(x < 0 for x in e):
                raise PreconditionError(f"bad exponent vector {e!r}")
        return MonomialIdeal(dim=dim, gens=_minimal_antichain(exps))

    @staticmethod
    def from_ideal(ideal: Ideal) -> "MonomialIdeal":
        if not ideal.ring.is_polynomial_ring:
            raise PreconditionError(
                "monomial-ideal fast paths require a polynomial ring")
        exps = []
        for g in ideal.generators:
            if not g.is_monomial:
                raise PreconditionError(f"generator {g} is not a monomial")
            exps.append(g.lead_exp)
        return MonomialIdeal.from_exponents(ideal.ring.nvars, exps)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_proper(self) -> bool:
        return (0,) * self.dim not in self.gens

    def contains(self, u: Exp) -> bool:
        return any(exp_divides(g, u) for g in self.gens)

    def axis_degrees(self) -> list[int | None]:
        """Per axis, the smallest pure-power generator exponent (or None)."""
        out: list[int | None] = []
        for i in range(self.dim):
            pures = [g[i] for g in self.gens
                     if all(e == 0 for j, e in enumerate(g) if j != i)]
            out.append(min(pures) if pures else None)
        return out

    @property
    def is_zero_dimensional(self) -> bool:
        return bool(self.gens) and all(d is not None for d in self.axis_degrees())

    def standard_exponents(self) -> list[Exp]:
        """Lattice points outside the ideal (finite iff zero-dimensional)."""
        if not self.is_zero_dimensional:
            raise PreconditionError("ideal is not zero-dimensional")
        box = [int(d) for d in self.axis_degrees()]  # type: ignore[arg-type]
        return [u for u in product(*(range(b) for b in box))
                if not self.contains(u)]

    def max_standard_degree(self) -> int:
        """max{r : m^r not contained in the ideal} for zero-dimensional ideals."""
        return max(sum(u) for u in self.standard_exponents())

    def colength(self) -> int:
        return len(self.standard_exponents())

    def power(self, r: int) -> "MonomialIdeal":
        if r < 0:
            raise PreconditionError("negative power")
        if r == 0:
            return MonomialIdeal.from_exponents(self.dim, [(0,) * self.dim])
        sums = [tuple(sum(c) for c in zip(*combo))
                for combo in combinations_with_replacement(self.gens, r)]
        return MonomialIdeal.from_exponents(self.dim, sums)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve an n x n rational system; None when singular."""
    n = len(rows)
    m = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _rank(vectors: list) -> int:
    m = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Newton polyhedra


@dataclass(frozen=True)
class NewtonPolyhedron:
    """P = {u >= 0 : <w, u> >= 1 for every facet normal w}."""

    dim: int
    facets: tuple[tuple[Fraction, ...], ...]


def newton_polyhedron(a: MonomialIdeal) -> NewtonPolyhedron:
    """Complete irredundant facet list via double description from the
    generators (points) and the coordinate directions (rays)."""
    if a.is_zero:
        raise PreconditionError("zero ideal has no Newton polyhedron")
    if not a.is_proper:
        raise PreconditionError("unit ideal has no Newton polyhedron")
    d = a.dim
    if d > MAX_POLYHEDRON_DIM:
        raise PreconditionError(f"polyhedral engine capped at dimension {MAX_POLYHEDRON_DIM}")
    gens = [tuple(map(Fraction, g)) for g in a.gens]
    facets = set()
    for k in range(1, d + 1):
        for tight_gens in combinations(gens, k):
            for zero_axes in combinations(range(d), d - k):
                rows = [list(g) for g in tight_gens]
                rhs = [Fraction(1)] * k
                for i in zero_axes:
                    rows.append([Fraction(1 if j == i else 0) for j in range(d)])
                    rhs.append(Fraction(0))
                w = _solve_square(rows, rhs)
                if w is None or any(x < 0 for x in w):
                    continue
                if any(_dot(w, g) < 1 for g in gens):
                    continue
                tight = [g for g in gens if _dot(w, g) == 1]
                rays = [i for i in range(d) if w[i] == 0]
                vectors = [[gi - g0 for gi, g0 in zip(g, tight[0])] for g in tight[1:]]
                vectors += [[Fraction(1 if j == i else 0) for j in range(d)]
                            for i in rays]
                if d == 1 or _rank(vectors) == d - 1:
                    facets.add(tuple(w))
    if not facets:
        raise PreconditionError("no facets found; ideal is not proper")
    return NewtonPolyhedron(dim=d, facets=tuple(sorted(facets)))


def newton_member(u: Exp, P: NewtonPolyhedron) -> bool:
    """True iff u (componentwise nonnegative) lies in P."""
    return all(_dot(w, u) >= 1 for w in P.facets)


def lambda_shifted(P: NewtonPolyhedron, u: Exp) -> Fraction:
    """The scale at which u + (1,..,1) hits the boundary of scale * P; since
    P is up-closed this is the minimum of the facet functionals there."""
    shifted = tuple(x + 1 for x in u)
    return min(_dot(w, shifted) for w in P.facets)


def fpt(a: MonomialIdeal) -> Fraction:
    """F-pure threshold of a monomial ideal: lambda at the origin."""
    return lambda_shifted(newton_polyhedron(a), (0,) * a.dim)


def monomial_fthreshold(a: MonomialIdeal, J: MonomialIdeal) -> tuple[Fraction, Exp]:
    """Exact F-threshold of a with respect to zero-dimensional monomial J:
    the maximum of lambda over the staircase complement of J, with argmax."""
    if a.is_zero or J.is_zero:
        raise PreconditionError("both ideals must be nonzero")
    if not J.is_zero_dimensional:
        raise PreconditionError("denominator ideal must be zero-dimensional")
    P = newton_polyhedron(a)
    best_u = None
    best = None
    for u in sorted(J.standard_exponents()):
        val = lambda_shifted(P, u)
        if best is None or val > best:
            best, best_u = val, u
    assert best is not None and best_u is not None
    return best, best_u


# ---------------------------------------------------------------------------
# monomial test ideals and jumping exponents


@dataclass(frozen=True)
class MonomialTestIdealReport:
    exponent: Fraction
    generators: tuple[Exp, ...]


def _minimalize(exps) -> list[Exp]:
    exps = sorted(set(exps))
    return [u for u in exps
            if not any(v != u and exp_divides(v, u) for v in exps)]


def test_ideal_monomial(a: MonomialIdeal, c: Fraction) -> MonomialTestIdealReport:
    """Generalized test ideal of a monomial ideal at exponent c: the monomial
    ideal on exponents u with u + (1,..,1) strictly inside c * P(a), i.e.
    lambda(u) > c, minimalized."""
    c = Fraction(c)
    if c < 0:
        raise PreconditionError("negative exponent")
    P = newton_polyhedron(a)
    d = a.dim
    mins: list[Exp] = [(0,) * d]
    for w in P.facets:
        beta = c - sum(w)
        if beta < 0:
            continue  # every lattice point already clears this facet
        support = [i for i in range(d) if w[i] > 0]
        caps = {i: int(beta / w[i]) + 1 for i in support}
        local: list[Exp] = []
        for combo in product(*(range(caps[i] + 1) for i in support)):
            u = [0] * d
            for i, v in zip(support, combo):
                u[i] = v
            if _dot(w, u) > beta:
                local.append(tuple(u))
        local = _minimalize(local)
        mins = _minimalize([tuple(max(x, y) for x, y in zip(m, l))
                            for m in mins for l in local])
    return MonomialTestIdealReport(exponent=c, generators=tuple(sorted(mins)))


def jumping_exponents(a: MonomialIdeal, bound: Fraction) -> list[Fraction]:
    """Sorted distinct lambda values strictly below the bound; the smallest
    is fpt(a).  Requires a zero-dimensional so the set is finite."""
    bound = Fraction(bound)
    if not a.is_zero_dimensional:
        raise PreconditionError("jumping exponents require a zero-dimensional ideal")
    if bound <= 0:
        return []
    P = newton_polyhedron(a)
    d = a.dim
    box = []
    for i in range(d):
        cap = max(-(-bound.numerator * w[i].denominator //
                    (bound.denominator * w[i].numerator)) for w in P.facets)
        box.append(int(cap) + 1)
    values = set()
    for u in product(*(range(b) for b in box)):
        val = lambda_shifted(P, u)
        if val < bound:
            values.add(val)
    return sorted(values)


# ---------------------------------------------------------------------------
# covolume and multiplicity


@dataclass(frozen=True)
class CovolumeReport:
    covolume: Fraction
    multiplicity: Fraction
    colength: int


def _normalize_row(a: tuple, b: Fraction):
    for x in a:
        if x != 0:
            scale = abs(x)
            return tuple(y / scale for y in a), b / scale
    return a, b


def _vertices(rows, n):
    verts = set()
    for combo in combinations(range(len(rows)), n):
        sol = _solve_square([list(rows[i][0]) for i in combo],
                            [rows[i][1] for i in combo])
        if sol is None:
            continue
        if all(_dot(a, sol) <= b for a, b in rows):
            verts.add(tuple(sol))
    return sorted(verts)


def _polytope_volume(rows, n) -> Fraction:
    """Exact volume of the bounded polytope {x : a.x <= b}; recursive pyramid
    decomposition from the lexicographically smallest vertex."""
    seen = {}
    for a, b in rows:
        na, nb = _normalize_row(tuple(a), b)
        if na in seen:
            seen[na] = min(seen[na], nb)
        else:
            seen[na] = nb
    rows = sorted(seen.items())
    verts = _vertices(rows, n)
    if len(verts) <= n:
        return Fraction(0)
    v0 = verts[0]
    if _rank([[x - y for x, y in zip(v, v0)] for v in verts[1:]]) < n:
        return Fraction(0)
    if n == 1:
        xs = [v[0] for v in verts]
        return max(xs) - min(xs)
    total = Fraction(0)
    for a, b in rows:
        height = b - _dot(a, v0)
        if height == 0:
            continue
        tight = [v for v in verts if _dot(a, v) == b]
        if len(tight) < n:
            continue
        piv = max(range(n), key=lambda i: abs(a[i]))
        sub_rows = []
        for c, dd in rows:
            if (c, dd) == (a, b):
                continue
            coef = [c[m] - c[piv] * a[m] / a[piv] for m in range(n) if m != piv]
            rhs = dd - c[piv] * b / a[piv]
            sub_rows.append((tuple(coef), rhs))
        sub = _polytope_volume(sub_rows, n - 1)
        total += height * sub / (n * abs(a[piv]))
    return total


def covolume_mult(a: MonomialIdeal) -> CovolumeReport:
    """Exact volume of the staircase region below the Newton polyhedron,
    the multiplicity d! * covolume, and the staircase lattice-point count."""
    if not a.is_zero_dimensional:
        raise PreconditionError("covolume requires a zero-dimensional ideal")
    d = a.dim
    if d > MAX_POLYHEDRON_DIM:
        raise PreconditionError(f"polyhedral engine capped at dimension {MAX_POLYHEDRON_DIM}")
    P = newton_polyhedron(a)
    box = [Fraction(int(m)) for m in a.axis_degrees()]  # type: ignore[arg-type]
    rows = []
    for i in range(d):
        e_i = tuple(Fraction(1 if j == i else 0) for j in range(d))
        rows.append((e_i, box[i]))
        rows.append((tuple(-x for x in e_i), Fraction(0)))
    for w in P.facets:
        rows.append((tuple(-x for x in w), Fraction(-1)))
    inside = _polytope_volume(rows, d)
    box_volume = Fraction(1)
    for m in box:
        box_volume *= m
    covol = box_volume - inside
    return CovolumeReport(covolume=covol,
                          multiplicity=factorial(d) * covol,
                          colength=a.colength())


# ---------------------------------------------------------------------------
# combinatorial nu oracle


def nu_monomial_oracle(a: MonomialIdeal, J: MonomialIdeal, q: int,
                       max_points: int = 4_000_000) -> int:
    """Groebner-free evaluation of nu for monomial ideals: the maximum of
    ord_a(u) over lattice points u outside J^[q], where ord_a(u) is the
    largest r with u componentwise above a sum of r generators (a bounded
    knapsack, solved by dynamic programming over the staircase box)."""
    if not J.is_zero_dimensional:
        raise PreconditionError("oracle requires a zero-dimensional denominator")
    if a.is_zero or not a.is_proper:
        raise PreconditionError("numerator must be a nonzero proper ideal")
    d = a.dim
    dims = [q * int(m) for m in J.axis_degrees()]  # type: ignore[arg-type]
    npoints = 1
    for m in dims:
        npoints *= m
    if npoints > max_points:
        raise BudgetExceededError(
            f"staircase box for the oracle has {npoints} points (cap {max_points})")
    strides = [1] * d
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    gens = list(a.gens)
    gen_offsets = [sum(g[i] * strides[i] for i in range(d)) for g in gens]
    bracket = [tuple(q * x for x in g) for g in J.gens]
    ord_table = [0] * npoints
    best = 0
    idx = 0
    for u in product(*(range(m) for m in dims)):
        val = 0
        for g, off in zip(gens, gen_offsets):
            if all(ui >= gi for ui, gi in zip(u, g)):
                cand = ord_table[idx - off] + 1
                if cand > val:
                    val = cand
        ord_table[idx] = val
        if val > best and not any(exp_divides(h, u) for h in bracket):
            best = val
        idx += 1
    return best
