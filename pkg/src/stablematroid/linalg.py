"""Exact linear algebra over the rationals (and any exact field).

Everything here works on plain lists of lists.  Entries may be
``Fraction``/``int`` or any exact field element supporting ``+ - * /``
and comparison with zero (e.g. :class:`stablematroid.quaternion.GaussianRational`).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def det(matrix: Sequence[Sequence]):
    """Determinant by Bareiss fraction-free elimination.

    Intermediate values stay in the ring generated by the entries: every
    division in the Bareiss recurrence is exact.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = val if prev is None else _exact_div(val, prev)
            m[i][k] = m[i][k] * 0
        prev = pivot
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        assert r == 0, "Bareiss division must be exact"
        return q
    return a / b


def _inverse(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(row) for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = _inverse(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> Matrix:
    """Basis of {x : rows @ x = 0} as a list of vectors (one per free column)."""
    if not rows:
        if n_cols is None:
            raise ValueError("n_cols required for an empty system")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(rows[0])
    reduced, pivots = rref(to_fraction_matrix(rows))
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def row_basis(vectors: Sequence[Sequence]) -> Matrix:
    """A basis (nonzero rows of the RREF) for the span of ``vectors``."""
    if not vectors:
        return []
    reduced, pivots = rref(to_fraction_matrix(vectors))
    return reduced[: len(pivots)]


def in_span(vectors: Sequence[Sequence], vec: Sequence) -> bool:
    if all(x == 0 for x in vec):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [list(vec)]) == rank(vectors)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in cols] for row in a]
