"""Exact linear algebra over the rationals and the integers."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel; one vector per free column, with a 1 in that column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve_affine(
    rows: Sequence[Sequence[Any]], rhs: Sequence[Any]
) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b`` exactly.

    Returns a particular solution (free variables set to 0) and a kernel basis,
    or ``None`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x, nullspace(rows, ncols)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    if ncols < nrows:
        m = [list(col) for col in zip(*m)]
        nrows, ncols = ncols, nrows
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        piv_row = m[r]
        p = piv_row[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    m[i] = [(p * v) // prev for v in row]
                continue
            m[i] = [(p * v - f * w) // prev for v, w in zip(row, piv_row)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r
