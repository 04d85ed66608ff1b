"""Standard-form linear programs ``min c^T x  s.t.  A x = b, x >= 0``.

Everything here is exact.  Column indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from lplab import linalg
from lplab.errors import DimensionMismatch, RankDeficient, SingularBasis
from lplab.rational import to_rational


@dataclass(frozen=True)
class LinearProgram:
    """Validated standard-form LP data.

    Construction converts every entry to a Fraction and checks that the
    dimensions agree and that ``rank(A) == m``.
    """

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    name: str = ""

    def __post_init__(self):
        A = tuple(tuple(to_rational(v) for v in row) for row in self.A)
        b = tuple(to_rational(v) for v in self.b)
        c = tuple(to_rational(v) for v in self.c)
        m = len(A)
        if m < 1:
            raise DimensionMismatch("A needs at least one row")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise DimensionMismatch("rows of A have different lengths")
        if len(b) != m:
            raise DimensionMismatch(f"b has length {len(b)}, A has {m} rows")
        if len(c) != n:
            raise DimensionMismatch(f"c has length {len(c)}, A has {n} columns")
        r = linalg.rank(A)
        if r != m:
            raise RankDeficient(r, m)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.A]

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return linalg.dot(self.c, x)

    def with_objective(self, c: Sequence, name: str | None = None) -> "LinearProgram":
        return LinearProgram(self.A, self.b, tuple(c), self.name if name is None else name)


def validate(A, b, c, name: str = "") -> LinearProgram:
    """Build a :class:`LinearProgram` from raw nested data.

    Raises :class:`DimensionMismatch` or :class:`RankDeficient`.
    """
    try:
        rows = [list(row) for row in A]
    except TypeError as exc:
        raise DimensionMismatch("A must be a sequence of rows") from exc
    return LinearProgram(tuple(map(tuple, rows)), tuple(b), tuple(c), name)


@dataclass(frozen=True, order=True)
class Basis:
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(int(j) for j in self.indices)))
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"repeated index in basis {self.indices}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Basis":
        return cls(tuple(indices))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, j) -> bool:
        return j in self.indices

    def swap(self, leaving: int, entering: int) -> "Basis":
        return Basis(tuple(entering if j == leaving else j for j in self.indices))

    def nonbasic(self, n: int) -> list[int]:
        inside = set(self.indices)
        return [j for j in range(n) if j not in inside]


@dataclass(frozen=True)
class BasicSolution:
    basis: Basis
    x: tuple[Fraction, ...]
    objective: Fraction
    feasible: bool
    degenerate: bool


@dataclass(frozen=True)
class DualCertificate:
    y: tuple[Fraction, ...]
    s: tuple[Fraction, ...]


@dataclass(frozen=True)
class Factorization:
    """Basis with the explicit inverse of ``A_B``; columns of ``A_B`` follow
    ``basis.indices`` order."""

    lp: LinearProgram = field(repr=False)
    basis: Basis
    inverse: list[list[Fraction]] = field(repr=False)

    def solve_column(self, column: Sequence[Fraction]) -> list[Fraction]:
        return linalg.matvec(self.inverse, column)

    def direction(self, j: int) -> list[Fraction]:
        return self.solve_column(self.lp.column(j))


def _as_basis(lp: LinearProgram, B) -> Basis:
    basis = B if isinstance(B, Basis) else Basis.of(B)
    if len(basis) != lp.m:
        raise DimensionMismatch(f"basis has {len(basis)} indices, LP has m={lp.m}")
    if any(not 0 <= j < lp.n for j in basis):
        raise DimensionMismatch(f"basis {basis.indices} has an index outside 0..{lp.n - 1}")
    return basis


def factorize(lp: LinearProgram, B) -> Factorization:
    basis = _as_basis(lp, B)
    try:
        inv = linalg.inverse(linalg.columns(lp.A, basis.indices))
    except linalg.SingularMatrix:
        raise SingularBasis(basis.indices) from None
    return Factorization(lp, basis, inv)


def basis_solve(lp: LinearProgram, B, fac: Factorization | None = None) -> BasicSolution:
    """Solve ``A_B x_B = b`` exactly and embed the result with ``x_N = 0``."""
    fac = fac or factorize(lp, B)
    xb = fac.solve_column(lp.b)
    x = [Fraction(0)] * lp.n
    for j, v in zip(fac.basis.indices, xb):
        x[j] = v
    feasible = all(v >= 0 for v in xb)
    degenerate = feasible and any(v == 0 for v in xb)
    return BasicSolution(fac.basis, tuple(x), lp.objective(x), feasible, degenerate)


def dual_from_basis(lp: LinearProgram, B, fac: Factorization | None = None) -> DualCertificate:
    """Dual point ``y = A_B^{-T} c_B`` and slacks ``s = c - A^T y``."""
    fac = fac or factorize(lp, B)
    cb = [lp.c[j] for j in fac.basis.indices]
    y = linalg.matvec(linalg.transpose(fac.inverse), cb)
    s = [lp.c[j] - linalg.dot(lp.column(j), y) for j in range(lp.n)]
    return DualCertificate(tuple(y), tuple(s))


def reduced_costs(lp: LinearProgram, B, fac: Factorization | None = None) -> dict[int, Fraction]:
    """Reduced cost of every nonbasic column, keyed by column index."""
    fac = fac or factorize(lp, B)
    s = dual_from_basis(lp, fac.basis, fac).s
    return {j: s[j] for j in fac.basis.nonbasic(lp.n)}
