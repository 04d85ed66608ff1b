"""Dense exact linear algebra over rationals.

Matrices are sequences of rows; every routine copies its input and returns
fresh lists of :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class SingularMatrix(ArithmeticError):
    pass


def _copy(M: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in M]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matvec(M: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def columns(M: Sequence[Sequence[Fraction]], idx: Sequence[int]) -> Matrix:
    """Submatrix made of the columns ``idx`` of ``M``, in the given order."""
    return [[row[j] for j in idx] for row in M]


def rank(M: Sequence[Sequence]) -> int:
    A = _copy(M)
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * p for a, p in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(M: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrix`."""
    A = _copy(M)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("inverse of a non-square matrix")
    inv = identity(n)
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {c}")
        A[c], A[pivot] = A[pivot], A[c]
        inv[c], inv[pivot] = inv[pivot], inv[c]
        p = A[c][c]
        if p != 1:
            A[c] = [a / p for a in A[c]]
            inv[c] = [a / p for a in inv[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * q for a, q in zip(A[i], A[c])]
                inv[i] = [a - f * q for a, q in zip(inv[i], inv[c])]
    return inv


def solve(M: Sequence[Sequence], rhs: Sequence) -> Vector:
    """Solve ``M x = rhs`` exactly for square nonsingular ``M``."""
    n = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    if len(aug) != n or any(len(row) != n + 1 for row in aug):
        raise ValueError("solve needs a square matrix and a matching right-hand side")
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {c}")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        for i in range(c + 1, n):
            if aug[i][c] != 0:
                f = aug[i][c] / aug[c][c]
                aug[i] = [a - f * p for a, p in zip(aug[i], aug[c])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = aug[i][n] - sum((aug[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = s / aug[i][i]
    return x


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss fraction-free elimination.

    Integer input stays integer throughout: every division is exact.
    """
    A = _copy(M)
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]
