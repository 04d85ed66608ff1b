"""End-to-end verification of one instance: census, solve, every check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from lplab import bounds
from lplab.bounds import BoundInputs, CheckSummary, Verdict
from lplab.errors import NotApplicable, UnboundedLP
from lplab.lp import Basis, LinearProgram
from lplab.oracle import DEFAULT_BUDGET, VertexCensus, certify_optimal, enumerate_vertices
from lplab.simplex import CycleMode, PivotRule, SolveResult, SolveStatus, phase_one, solve


@dataclass(frozen=True)
class VerifyReport:
    instance: str
    rule: PivotRule
    m: int
    n: int
    status: SolveStatus
    z: Fraction | None
    z_star: Fraction
    delta: Fraction
    gamma: Fraction
    second_value: Fraction | None
    all_nondegenerate: bool
    distinct_bfs_bound: int
    second_optimal_bound: int | None
    tu_bound: int | None
    mdp_bound: int | None
    observed_distinct_bfs: int
    observed_iterations: int
    checks: tuple[CheckSummary, ...]
    census: VertexCensus
    result: SolveResult

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def verify_instance(
    lp: LinearProgram,
    rule: PivotRule | str = PivotRule.MOST_NEGATIVE,
    initial_basis=None,
    *,
    b_l1=None,
    theta=None,
    max_iterations: int | None = None,
    on_cycle: CycleMode | str = CycleMode.BLAND_FALLBACK,
    budget: int | None = DEFAULT_BUDGET,
) -> VerifyReport:
    """Enumerate ``lp``, solve it with ``rule`` and run every bound check.

    ``b_l1`` adds the totally-unimodular checks, ``theta`` the MDP checks.
    The iteration cap defaults to ten times the distinct-vertex bound.
    Raises :class:`~lplab.errors.NoFeasibleBasis`,
    :class:`~lplab.errors.BudgetExceeded`, :class:`~lplab.errors.Infeasible`
    or :class:`~lplab.errors.UnboundedLP`.
    """
    rule = PivotRule.parse(rule)
    census = enumerate_vertices(lp, budget=budget)
    m, n = lp.m, lp.n
    general = bounds.distinct_bfs_bound(m, n, census.delta, census.gamma)
    if max_iterations is None:
        max_iterations = 10 * general

    start = Basis.of(initial_basis) if initial_basis is not None else phase_one(lp, rule)
    result = solve(lp, start, rule, max_iterations=max_iterations, on_cycle=on_cycle)
    trace = result.trace
    if result.status is SolveStatus.UNBOUNDED:
        raise UnboundedLP(f"{lp.name or 'LP'}: column {result.unbounded_column} is an unbounded direction")

    verdicts: list[Verdict] = [
        bounds.verdict("solver_optimal", result.status is SolveStatus.OPTIMAL, status=result.status.value),
        bounds.verdict(
            "oracle_agreement",
            result.status is SolveStatus.OPTIMAL and result.z == census.z_star,
            solver_z=result.z,
            oracle_z=census.z_star,
        ),
    ]
    verdicts += bounds.check_lower_bound(trace, census.z_star, m, census.gamma)
    verdicts += bounds.check_gap_reduction(trace, census.z_star, m, census.delta, census.gamma)
    _basis, cert = certify_optimal(lp, census)
    verdicts += bounds.check_vanishing_witness(trace, cert.s, census.z_star, m, census.delta, census.gamma)

    inputs = BoundInputs(
        m=m,
        n=n,
        delta=census.delta,
        gamma=census.gamma,
        z_star=census.z_star,
        second_value=census.second_value,
        initial_objective=trace[0].objective,
        b_l1=None if b_l1 is None else Fraction(b_l1),
        theta=None if theta is None else Fraction(theta),
    )
    verdicts += bounds.check_counts(result, inputs, census.all_nondegenerate)
    if b_l1 is not None:
        verdicts += bounds.check_tu_census(census, b_l1)
    if theta is not None:
        verdicts += bounds.check_mdp_census(census, m, theta)

    try:
        cor = bounds.second_optimal_bound(
            m, census.delta, census.gamma, inputs.initial_objective, census.z_star, census.second_value
        )
    except NotApplicable:
        cor = None

    return VerifyReport(
        instance=lp.name,
        rule=rule,
        m=m,
        n=n,
        status=result.status,
        z=result.z,
        z_star=census.z_star,
        delta=census.delta,
        gamma=census.gamma,
        second_value=census.second_value,
        all_nondegenerate=census.all_nondegenerate,
        distinct_bfs_bound=general,
        second_optimal_bound=cor,
        tu_bound=None if b_l1 is None else bounds.tu_bound(m, n, b_l1),
        mdp_bound=None if theta is None else bounds.mdp_bound(m, theta),
        observed_distinct_bfs=result.distinct_bfs_count,
        observed_iterations=result.iterations,
        checks=tuple(bounds.summarize(verdicts)),
        census=census,
        result=result,
    )
