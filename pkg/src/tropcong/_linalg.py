"""Exact rational linear algebra helpers over fractions.Fraction.

Everything here works on tuples of Fractions; nothing is mutated in place.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vec = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact computations: %r" % (x,))
    return Fraction(x)


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vec(d: int) -> Vec:
    return (ZERO,) * d


def dot(u: Sequence, v: Sequence) -> Fraction:
    assert len(u) == len(v), (len(u), len(v))
    s = ZERO
    for a, b in zip(u, v):
        s += a * b
    return s


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Vec) -> Vec:
    c = frac(c)
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def primitive(v: Sequence) -> Vec:
    """Smallest integer vector on the same ray (orientation preserved)."""
    v = vec(v)
    if is_zero_vec(v):
        return v
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(Fraction(a // g) for a in ints)


def neg_primitive_pair(v: Sequence) -> Vec:
    """Canonical representative of the line through v: primitive with first nonzero > 0."""
    p = primitive(v)
    for a in p:
        if a != 0:
            return p if a > 0 else vscale(-1, p)
    return p


def rref(rows: Sequence[Sequence]) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    mat = [list(vec(r)) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank_of(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace_basis(rows: Sequence[Sequence], dim: int) -> list[Vec]:
    """Basis of {x : row . x = 0 for all rows} in Q^dim."""
    red, pivots = rref(rows)
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fc in free:
        v = [ZERO] * dim
        v[fc] = ONE
        for rrow, pc in zip(red, pivots):
            v[pc] = -rrow[fc]
        basis.append(tuple(v))
    return basis


def reduce_mod_span(x: Sequence, span_rows: Sequence[Sequence]) -> Vec:
    """Canonical representative of x modulo span(span_rows): pivot coords zeroed."""
    x = vec(x)
    red, pivots = rref(span_rows)
    for rrow, pc in zip(red, pivots):
        if x[pc] != 0:
            x = vsub(x, vscale(x[pc], rrow))
    return x


def solve_eq(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Vec]:
    """One solution of rows . x = rhs, or None if inconsistent."""
    if not rows:
        return None
    dim = len(rows[0])
    aug = [list(vec(r)) + [frac(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    x = [ZERO] * dim
    for rrow, pc in zip(red, pivots):
        if pc == dim:  # 0 = 1 row
            return None
        x[pc] = rrow[dim]
    return tuple(x)
