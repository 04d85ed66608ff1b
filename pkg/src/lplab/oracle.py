"""Brute-force vertex census: every basis, every basic feasible solution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from lplab.errors import BudgetExceeded, NoFeasibleBasis, NoOptimalBasisFound, SingularBasis
from lplab.lp import (
    BasicSolution,
    Basis,
    DualCertificate,
    LinearProgram,
    basis_solve,
    dual_from_basis,
    factorize,
)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Vertex:
    x: tuple[Fraction, ...]
    objective: Fraction
    bases: tuple[Basis, ...]

    @property
    def support_size(self) -> int:
        return sum(1 for v in self.x if v != 0)


@dataclass(frozen=True)
class VertexCensus:
    m: int
    n: int
    subsets_examined: int
    singular_count: int
    feasible_bases: tuple[tuple[Basis, BasicSolution], ...]
    distinct_vertices: tuple[Vertex, ...]
    delta: Fraction
    gamma: Fraction
    z_star: Fraction
    second_value: Fraction | None
    all_nondegenerate: bool

    @property
    def optimal_vertices(self) -> tuple[Vertex, ...]:
        return tuple(v for v in self.distinct_vertices if v.objective == self.z_star)

    def positive_entries(self):
        for v in self.distinct_vertices:
            yield from (q for q in v.x if q > 0)


def enumerate_vertices(lp: LinearProgram, *, budget: int | None = DEFAULT_BUDGET) -> VertexCensus:
    """Enumerate all ``C(n, m)`` column subsets of ``lp``.

    ``budget=None`` disables the guard.  Raises :class:`BudgetExceeded`
    before doing any work when the subset count is over budget, and
    :class:`NoFeasibleBasis` when no basis is feasible.
    """
    m, n = lp.m, lp.n
    total = comb(n, m)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget)

    feasible: list[tuple[Basis, BasicSolution]] = []
    singular = 0
    by_point: dict[tuple[Fraction, ...], list[Basis]] = {}
    for idx in combinations(range(n), m):
        try:
            sol = basis_solve(lp, Basis(idx))
        except SingularBasis:
            singular += 1
            continue
        if sol.feasible:
            feasible.append((sol.basis, sol))
            by_point.setdefault(sol.x, []).append(sol.basis)

    if not feasible:
        raise NoFeasibleBasis(f"{lp.name or 'LP'}: none of the {total} bases is feasible")

    vertices = tuple(
        Vertex(x, lp.objective(x), tuple(sorted(bases))) for x, bases in sorted(by_point.items())
    )
    positives = [q for v in vertices for q in v.x if q > 0]
    if positives:
        delta, gamma = min(positives), max(positives)
    else:
        # only x = 0 is feasible (b = 0); no positive entries to bound
        delta = gamma = Fraction(1)
    objectives = sorted({v.objective for v in vertices})
    return VertexCensus(
        m=m,
        n=n,
        subsets_examined=total,
        singular_count=singular,
        feasible_bases=tuple(feasible),
        distinct_vertices=vertices,
        delta=delta,
        gamma=gamma,
        z_star=objectives[0],
        second_value=objectives[1] if len(objectives) > 1 else None,
        all_nondegenerate=all(v.support_size == m for v in vertices),
    )


def certify_optimal(lp: LinearProgram, census: VertexCensus) -> tuple[Basis, DualCertificate]:
    """Dual certificate ``(y*, s*)`` taken from the first dual-feasible basis
    of an optimal vertex."""
    for _basis, sol in census.feasible_bases:
        if sol.objective != census.z_star:
            continue
        fac = factorize(lp, sol.basis)
        cert = dual_from_basis(lp, sol.basis, fac)
        if all(v >= 0 for v in cert.s):
            return sol.basis, cert
    raise NoOptimalBasisFound(f"{lp.name or 'LP'}: no optimal basis has nonnegative reduced costs")
