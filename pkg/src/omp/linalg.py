"""Exact rational linear algebra on lists of :class:`fractions.Fraction`."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational entries")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"floating point entry {x!r}; pass an int, str or Fraction")
    raise TypeError(f"non-rational entry {x!r}")


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = [[to_fraction(x) for x in row] for row in rows]
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in as_matrix(rows)]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def row_basis(rows: Sequence[Sequence]) -> Matrix:
    """Nonzero rows of the RREF: a basis of the row space."""
    m, piv = rref(rows)
    return m[: len(piv)]


def kernel(rows: Sequence[Sequence]) -> Matrix:
    """Basis (as rows) of the right null space ``{x : rows @ x = 0}``."""
    m, piv = rref(rows)
    ncols = len(m[0]) if m else 0
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [list(r) for r in as_matrix(rows)]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def sign(x) -> int:
    return (x > 0) - (x < 0)


def columns(m: Matrix, idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in m]


def matvec_row(u: Sequence[Fraction], m: Matrix) -> list:
    """Row vector ``u @ m``."""
    ncols = len(m[0]) if m else 0
    return [sum((u[i] * m[i][j] for i in range(len(m))), Fraction(0)) for j in range(ncols)]


def fmt(x: Fraction) -> str:
    return str(x)
