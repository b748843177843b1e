"""Independent oracles for the test suite.

These deliberately avoid the code paths they check: homogeneous ideal
membership is decided by row reduction over F_p degree by degree (numpy
integer arithmetic, exact for small p), and Newton-polyhedron membership is
re-decided as exact LP feasibility via Fourier-Motzkin elimination over
Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from fthresh.poly import Polynomial, RingContext


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree + 1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def _degree_matrix(ring: RingContext, gens: list[Polynomial], degree: int,
                   index: dict) -> np.ndarray:
    rows = []
    for g in gens:
        shift_deg = degree - g.total_degree
        if shift_deg < 0:
            continue
        for shift in monomials_of_degree(ring.nvars, shift_deg):
            row = np.zeros(len(index), dtype=np.int64)
            for exp, c in g.terms.items():
                target = tuple(a + b for a, b in zip(exp, shift))
                row[index[target]] = c
            rows.append(row)
    if not rows:
        return np.zeros((0, len(index)), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _row_reduce(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    m = m % p
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if len(others):
            m[others] = (m[others] - np.outer(m[others, col], m[rank])) % p
        rank += 1
        if rank == rows:
            break
    return m, rank


def homogeneous_member(f: Polynomial, gens: list[Polynomial]) -> bool:
    """Membership of homogeneous f in the ideal generated by homogeneous gens
    (relations must be passed in explicitly), by graded linear algebra."""
    ring = f.ring
    assert f.is_homogeneous() and all(g.is_homogeneous() for g in gens)
    if f.is_zero:
        return True
    degree = f.total_degree
    basis = monomials_of_degree(ring.nvars, degree)
    index = {m: i for i, m in enumerate(basis)}
    matrix = _degree_matrix(ring, gens, degree, index)
    fvec = np.zeros(len(index), dtype=np.int64)
    for exp, c in f.terms.items():
        fvec[index[exp]] = c
    _, rank_without = _row_reduce(matrix.copy(), ring.p)
    stacked = np.vstack([matrix, fvec[None, :]])
    _, rank_with = _row_reduce(stacked, ring.p)
    return rank_without == rank_with


def degree_slice_is_full(ring: RingContext, gens: list[Polynomial],
                         degree: int) -> bool:
    """True when every degree-`degree` monomial lies in (gens); i.e. the
    graded slice of the quotient vanishes."""
    basis = monomials_of_degree(ring.nvars, degree)
    index = {m: i for i, m in enumerate(basis)}
    matrix = _degree_matrix(ring, gens, degree, index)
    _, rank = _row_reduce(matrix, ring.p)
    return rank == len(basis)


def graded_nu_of_max_ideal(ring: RingContext, denominator: list[Polynomial],
                           r_start: int = 1) -> int:
    """nu of the maximal ideal against a homogeneous denominator (relations
    included in the list): the last degree whose quotient slice is nonzero."""
    gens = denominator
    r = r_start
    while not degree_slice_is_full(ring, gens, r):
        r += 1
    return r - 1


# ---------------------------------------------------------------------------
# exact LP feasibility (Fourier-Motzkin)


def fm_feasible(rows: list[tuple[tuple[Fraction, ...], Fraction]], nvars: int) -> bool:
    """Feasibility of {x : a.x <= b for all rows} by eliminating variables."""
    rows = [([Fraction(c) for c in a], Fraction(b)) for a, b in rows]
    for var in range(nvars):
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        zero = [r for r in rows if r[0][var] == 0]
        new = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                scale_p, scale_n = ap[var], -an[var]
                coeffs = [scale_n * cp + scale_p * cn
                          for cp, cn in zip(ap, an)]
                new.append((coeffs, scale_n * bp + scale_p * bn))
        rows = new
    return all(b >= 0 for a, b in rows)


def point_in_hull_plus_orthant(u, gens) -> bool:
    """Exact membership of u in conv(gens) + R^d_{>=0}: feasibility of
    lambda >= 0, sum lambda = 1, sum lambda_j gens_j <= u."""
    k = len(gens)
    d = len(u)
    rows = []
    for j in range(k):
        coeffs = tuple(Fraction(-1) if i == j else Fraction(0) for i in range(k))
        rows.append((coeffs, Fraction(0)))
    ones = tuple(Fraction(1) for _ in range(k))
    rows.append((ones, Fraction(1)))
    rows.append((tuple(-x for x in ones), Fraction(-1)))
    for i in range(d):
        coeffs = tuple(Fraction(g[i]) for g in gens)
        rows.append((coeffs, Fraction(u[i])))
    return fm_feasible(rows, k)


# ---------------------------------------------------------------------------
# numerical semigroup oracle for the cuspidal cubic


def cusp_order_ideal_contains(order: int, generator_order: int) -> bool:
    """In k[[t^2, t^3]], whether t^order lies in (t^generator_order): the
    difference must land in the numerical semigroup {0, 2, 3, ...}."""
    diff = order - generator_order
    return diff == 0 or diff >= 2
