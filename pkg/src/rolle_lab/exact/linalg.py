"""Exact linear algebra over Q (and generic fields for determinants).

Matrices are lists of rows. Pivots are chosen as the first usable entry in column
order, so results are deterministic for a fixed column ordering.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def _is_zero(x) -> bool:
    iz = getattr(x, "is_zero", None)
    if callable(iz):
        return iz()
    return not x


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on row-scaled integers."""
    if not rows:
        return 0
    m = _integer_rows(rows)
    nrows, ncols = len(m), len(m[0])
    r, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        row_r = m[r]
        nz = [j for j in range(c, ncols) if row_r[j]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row_i = m[i]
                for j in nz:
                    row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``a x = b`` (free variables set to zero), or None."""
    if not a:
        return [] if all(not x for x in b) else None
    ncols = len(a[0])
    aug = [list(row) + [bb] for row, bb in zip(a, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = m[r][ncols]
    return x


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols or 0)] for i in range(ncols or 0)]
    ncols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence]):
    """Determinant over any exact field (Fractions, Gaussian rationals, rational functions)."""
    m = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    result = None
    sgn = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(m[i][c])), None)
        if piv is None:
            return m[0][0] * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sgn = -sgn
        p = m[c][c]
        result = p if result is None else result * p
        for i in range(c + 1, n):
            if _is_zero(m[i][c]):
                continue
            f = m[i][c] / p
            for j in range(c + 1, n):
                m[i][j] = m[i][j] - f * m[c][j]
    return result if sgn == 1 else -result


def greedy_pivot_minor(rows: Sequence[Sequence], size: int) -> tuple[list[int], list[int], Fraction]:
    """Rows, columns and determinant of a nonzero ``size``-minor found by pivoted elimination.

    Returns a zero determinant when the rank is below ``size``.
    """
    if size == 0:
        return [], [], Fraction(1)
    m = to_matrix(rows)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    order = list(range(nrows))
    pr: list[int] = []
    pc: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        order[r], order[piv] = order[piv], order[r]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
        pr.append(order[r])
        pc.append(c)
        r += 1
        if r == size or r == nrows:
            break
    if r < size:
        return pr, pc, Fraction(0)
    sub = [[Fraction(rows[i][j]) for j in pc] for i in pr]
    return pr, pc, det(sub)
