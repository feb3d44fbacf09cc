"""Small exact linear algebra helpers over Fraction and Scalar matrices.

The matrices in this package are tiny (at most 5x5), so plain Gauss-Jordan
elimination over Fraction and cofactor determinants over Scalar are exact
and fast.  Scalar matrices arising from the duality pairing always carry a
single common power of pi; inversion factors that power out and inverts
the rational part.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import Scalar

__all__ = [
    "invert_fraction_matrix",
    "invert_scalar_matrix",
    "scalar_matrix_det",
    "fraction_matrix_rank",
]


def invert_fraction_matrix(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination with partial pivoting."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def _common_pi_power(rows: Sequence[Sequence[Scalar]]) -> int:
    exps = set()
    for row in rows:
        for s in row:
            if not s.is_zero:
                exps.add(s.monomial()[0])
    if len(exps) > 1:
        raise ValueError(f"mixed pi powers in matrix: {sorted(exps)}")
    return exps.pop() if exps else 0


def invert_scalar_matrix(rows: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Exact inverse of a Scalar matrix whose entries share one pi power.

    Writes the matrix as pi^m * R with R rational and returns pi^-m * R^-1.
    Entries with several pi powers never occur for the pairing matrices this
    is used on; they are rejected as an internal-consistency failure.
    """
    m = _common_pi_power(rows)
    rational = [[s.coefficient(m) for s in row] for row in rows]
    inv = invert_fraction_matrix(rational)
    return [[Scalar.of(x, -m) for x in row] for row in inv]


def scalar_matrix_det(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant over the Scalar ring by cofactor expansion."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        return Scalar.one()
    if n == 1:
        return rows[0][0]
    det = Scalar.zero()
    for j in range(n):
        if rows[0][j].is_zero:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * scalar_matrix_det(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def fraction_matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by forward elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        p = a[row][col]
        for r in range(row + 1, len(a)):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        rank += 1
        row += 1
        if row == len(a):
            break
    return rank
