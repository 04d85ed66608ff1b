"""Primal simplex with exact arithmetic and a full per-iteration trace.

The loop refactorizes the basis from scratch at every iteration, which is
fine at the sizes this package targets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from lplab.errors import Infeasible, InfeasibleInitialBasis
from lplab.lp import (
    Basis,
    Factorization,
    LinearProgram,
    basis_solve,
    factorize,
    reduced_costs as _reduced_costs,
)

DEFAULT_MAX_ITERATIONS = 10**6


class PivotRule(enum.Enum):
    MOST_NEGATIVE = "dantzig"
    BEST_IMPROVEMENT = "best"
    BLAND = "bland"

    @classmethod
    def parse(cls, text: "str | PivotRule") -> "PivotRule":
        if isinstance(text, cls):
            return text
        aliases = {
            "dantzig": cls.MOST_NEGATIVE,
            "most-negative": cls.MOST_NEGATIVE,
            "most_negative": cls.MOST_NEGATIVE,
            "best": cls.BEST_IMPROVEMENT,
            "best-improvement": cls.BEST_IMPROVEMENT,
            "best_improvement": cls.BEST_IMPROVEMENT,
            "bland": cls.BLAND,
        }
        try:
            return aliases[text.lower()]
        except KeyError:
            raise ValueError(f"unknown pivot rule {text!r}") from None


class CycleMode(enum.Enum):
    ERROR = "error"
    BLAND_FALLBACK = "bland"


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    CYCLE_DETECTED = "cycle_detected"
    ITERATION_LIMIT = "iteration_limit"


class _Unbounded:
    def __repr__(self):
        return "UNBOUNDED"


#: Ratio-test outcome when the entering direction has no positive entry.
UNBOUNDED = _Unbounded()


@dataclass(frozen=True)
class IterateRecord:
    """State of iterate ``t``.

    ``reduced_costs`` and ``delta_t`` describe iterate ``t`` itself.  The
    pivot fields (``rule``, ``entering``, ``leaving``, ``step``,
    ``degenerate_pivot``, ``new_bfs``) describe the pivot that produced
    iterate ``t`` from iterate ``t - 1``; they are empty at ``t = 0``.
    ``delta_t`` is minus the most negative reduced cost, whatever the rule,
    and is None at an optimal iterate.
    """

    t: int
    basis: Basis
    x: tuple[Fraction, ...]
    objective: Fraction
    reduced_costs: Mapping[int, Fraction]
    delta_t: Fraction | None
    rule: PivotRule | None = None
    entering: int | None = None
    leaving: int | None = None
    step: Fraction | None = None
    degenerate_pivot: bool = False
    new_bfs: bool = True

    @property
    def optimal(self) -> bool:
        return self.delta_t is None


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    rule: PivotRule
    trace: tuple[IterateRecord, ...]
    optimal_basis: Basis | None = None
    optimal_x: tuple[Fraction, ...] | None = None
    z: Fraction | None = None
    unbounded_column: int | None = None
    cycles_detected: int = 0

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1

    @property
    def distinct_bfs_count(self) -> int:
        return len({rec.x for rec in self.trace})

    @property
    def final(self) -> IterateRecord:
        return self.trace[-1]


def dantzig_entering(reduced_costs: Mapping[int, Fraction]) -> tuple[int, Fraction] | None:
    """Most negative reduced cost, lowest index on ties.

    Returns ``(j, delta)`` with ``delta = -c̄_j``, or None when every
    reduced cost is nonnegative.
    """
    best = None
    for j in sorted(reduced_costs):
        v = reduced_costs[j]
        if v < 0 and (best is None or v < reduced_costs[best]):
            best = j
    if best is None:
        return None
    return best, -reduced_costs[best]


def bland_entering(reduced_costs: Mapping[int, Fraction]) -> int | None:
    return next((j for j in sorted(reduced_costs) if reduced_costs[j] < 0), None)


def ratio_test(lp: LinearProgram, B, x, entering: int, fac: Factorization | None = None):
    """Minimum-ratio test for ``entering``.

    Returns ``(leaving, step)`` or :data:`UNBOUNDED`.  Ties go to the lowest
    variable index.
    """
    fac = fac or factorize(lp, B)
    if entering in fac.basis:
        raise ValueError(f"column {entering} is already basic")
    d = fac.direction(entering)
    best: tuple[Fraction, int] | None = None
    for j, di in zip(fac.basis.indices, d):
        if di > 0:
            cand = (x[j] / di, j)
            if best is None or cand < best:
                best = cand
    if best is None:
        return UNBOUNDED
    step, leaving = best
    return leaving, step


def best_improvement_entering(
    lp: LinearProgram, B, x, reduced_costs: Mapping[int, Fraction], fac: Factorization | None = None
) -> int | None:
    """Column whose pivot gives the lowest next objective value.

    Ties on the objective decrease go to the more negative reduced cost and
    then to the lower index, so a fully degenerate candidate set falls back
    to the most-negative choice.  An unbounded candidate wins outright.
    """
    fac = fac or factorize(lp, B)
    best_key = None
    best_j = None
    for j in sorted(reduced_costs):
        cbar = reduced_costs[j]
        if cbar >= 0:
            continue
        outcome = ratio_test(lp, fac.basis, x, j, fac)
        if outcome is UNBOUNDED:
            return j
        _, step = outcome
        key = (-cbar * step, -cbar)
        if best_key is None or key > best_key:
            best_key, best_j = key, j
    return best_j


def _choose(rule: PivotRule, lp, fac, x, rc) -> int | None:
    if rule is PivotRule.MOST_NEGATIVE:
        pick = dantzig_entering(rc)
        return None if pick is None else pick[0]
    if rule is PivotRule.BEST_IMPROVEMENT:
        return best_improvement_entering(lp, fac.basis, x, rc, fac)
    return bland_entering(rc)


def solve(
    lp: LinearProgram,
    initial_basis,
    rule: PivotRule | str = PivotRule.MOST_NEGATIVE,
    *,
    max_iterations: int | None = None,
    on_cycle: CycleMode | str = CycleMode.BLAND_FALLBACK,
) -> SolveResult:
    """Run the primal simplex method from a feasible basis.

    A cycle is declared when a basis is revisited with no strict objective
    decrease since its last visit.  With :attr:`CycleMode.BLAND_FALLBACK`
    the loop switches to Bland's rule until the objective strictly
    decreases; with :attr:`CycleMode.ERROR` it stops with
    :attr:`SolveStatus.CYCLE_DETECTED`.
    """
    rule = PivotRule.parse(rule)
    on_cycle = CycleMode(on_cycle) if isinstance(on_cycle, str) else on_cycle
    limit = DEFAULT_MAX_ITERATIONS if max_iterations is None else max_iterations

    fac = factorize(lp, initial_basis)
    sol = basis_solve(lp, fac.basis, fac)
    if not sol.feasible:
        raise InfeasibleInitialBasis(f"basis {fac.basis.indices} gives an infeasible point {sol.x}")

    trace: list[IterateRecord] = []
    seen = {fac.basis}  # bases visited since the last strict objective decrease
    revisited = False
    active = rule
    cycles = 0
    pivot_info: dict = {}

    while True:
        rc = _reduced_costs(lp, fac.basis, fac)
        pick = dantzig_entering(rc)
        rec = IterateRecord(
            t=len(trace),
            basis=fac.basis,
            x=sol.x,
            objective=sol.objective,
            reduced_costs=rc,
            delta_t=None if pick is None else pick[1],
            **pivot_info,
        )
        trace.append(rec)

        if pick is None:
            return SolveResult(
                SolveStatus.OPTIMAL, rule, tuple(trace), fac.basis, sol.x, sol.objective, cycles_detected=cycles
            )
        if revisited and active is not PivotRule.BLAND:
            cycles += 1
            if on_cycle is CycleMode.ERROR:
                return SolveResult(SolveStatus.CYCLE_DETECTED, rule, tuple(trace), cycles_detected=cycles)
            active = PivotRule.BLAND
        if rec.t >= limit:
            return SolveResult(SolveStatus.ITERATION_LIMIT, rule, tuple(trace), cycles_detected=cycles)

        entering = _choose(active, lp, fac, sol.x, rc)
        outcome = ratio_test(lp, fac.basis, sol.x, entering, fac)
        if outcome is UNBOUNDED:
            return SolveResult(
                SolveStatus.UNBOUNDED, rule, tuple(trace), unbounded_column=entering, cycles_detected=cycles
            )
        leaving, step = outcome

        prev_x = sol.x
        used = active
        fac = factorize(lp, fac.basis.swap(leaving, entering))
        sol = basis_solve(lp, fac.basis, fac)
        moved = sol.x != prev_x
        if moved:
            seen = {fac.basis}
            revisited = False
            active = rule
        else:
            revisited = fac.basis in seen
            seen.add(fac.basis)
        pivot_info = dict(
            rule=used,
            entering=entering,
            leaving=leaving,
            step=step,
            degenerate_pivot=step == 0,
            new_bfs=moved,
        )


def phase_one(lp: LinearProgram, rule: PivotRule | str = PivotRule.MOST_NEGATIVE) -> Basis:
    """Find a feasible basis of ``lp`` or raise :class:`Infeasible`.

    Rows with a negative right-hand side are negated, then one artificial
    column per row is appended and their sum minimized.  Artificial columns
    left in the basis at level zero are pivoted out.  If the (sign-normalized)
    matrix already holds a unit column for every row, that basis is returned
    without pivoting; the highest-index unit column wins, so appended slacks
    are preferred.
    """
    m, n = lp.m, lp.n
    signs = [-1 if bi < 0 else 1 for bi in lp.b]
    A = [[s * v for v in row] for s, row in zip(signs, lp.A)]
    b = [s * v for s, v in zip(signs, lp.b)]

    unit = []
    for i in range(m):
        col = next(
            (j for j in reversed(range(n)) if A[i][j] == 1 and all(A[k][j] == 0 for k in range(m) if k != i)),
            None,
        )
        unit.append(col)
    if all(j is not None for j in unit):
        return Basis.of(unit)

    aux_A = [row + [int(i == k) for k in range(m)] for i, row in enumerate(A)]
    aux_c = [0] * n + [1] * m
    aux = LinearProgram(tuple(map(tuple, aux_A)), tuple(b), tuple(aux_c), f"{lp.name}:phase1")
    res = solve(aux, range(n, n + m), rule)
    if res.status is not SolveStatus.OPTIMAL:
        raise RuntimeError(f"auxiliary problem ended with {res.status}")  # objective is bounded below by 0
    if res.z > 0:
        raise Infeasible(f"{lp.name or 'LP'} has no feasible point (phase-one optimum {res.z})")

    basis = res.optimal_basis
    while any(j >= n for j in basis):
        fac = factorize(aux, basis)
        pos = next(p for p, j in enumerate(basis.indices) if j >= n)
        art = basis.indices[pos]
        row = fac.inverse[pos]
        repl = next(
            (j for j in basis.nonbasic(n) if j < n and sum(r * a for r, a in zip(row, aux.column(j))) != 0),
            None,
        )
        if repl is None:
            raise RuntimeError("cannot drive artificial column out; rank(A) < m")
        basis = basis.swap(art, repl)
    return basis
