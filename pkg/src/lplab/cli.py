"""Command-line interface: ``lplab solve|enumerate|verify|generate``."""

from __future__ import annotations

import argparse
import enum
import os
import sys

from lplab import generators
from lplab.errors import (
    BudgetExceeded,
    DimensionMismatch,
    GenerationFailed,
    Infeasible,
    InfeasibleInitialBasis,
    LpFormatError,
    NoFeasibleBasis,
    RankDeficient,
    RationalParseError,
    SingularBasis,
    UnboundedLP,
)
from lplab.oracle import DEFAULT_BUDGET, enumerate_vertices
from lplab.rational import format_rational, parse_rational
from lplab.serialize import (
    census_to_dict,
    dumps,
    lp_to_dict,
    read_lp_file,
    report_to_dict,
    solve_result_to_dict,
    write_json,
)
from lplab.simplex import CycleMode, PivotRule, SolveStatus, phase_one, solve
from lplab.verify import verify_instance

BUDGET_ENV = "LPLAB_BUDGET"


class ExitCode(enum.IntEnum):
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
    PARSE_ERROR = 3
    UNBOUNDED = 4
    INFEASIBLE = 5
    CYCLE_DETECTED = 6
    ITERATION_LIMIT = 7
    BUDGET_EXCEEDED = 8
    GENERATION_FAILED = 9


_STATUS_EXIT = {
    SolveStatus.OPTIMAL: ExitCode.OK,
    SolveStatus.UNBOUNDED: ExitCode.UNBOUNDED,
    SolveStatus.CYCLE_DETECTED: ExitCode.CYCLE_DETECTED,
    SolveStatus.ITERATION_LIMIT: ExitCode.ITERATION_LIMIT,
}

_PARSE_ERRORS = (
    LpFormatError,
    RationalParseError,
    DimensionMismatch,
    RankDeficient,
    SingularBasis,
    OSError,
)


def _fail(code: ExitCode, message: str) -> int:
    print(f"lplab: {message}", file=sys.stderr)
    return int(code)


def _budget(args) -> int | None:
    if args.no_budget:
        return None
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(_fail(ExitCode.USAGE, f"{BUDGET_ENV}={env!r} is not an integer"))
    return DEFAULT_BUDGET


def _emit(doc: dict, out: str | None) -> None:
    if out:
        write_json(out, doc)


def cmd_solve(args) -> int:
    try:
        f = read_lp_file(args.file)
    except _PARSE_ERRORS as exc:
        return _fail(ExitCode.PARSE_ERROR, str(exc))
    lp = f.lp
    try:
        start = f.initial_basis if f.initial_basis is not None else phase_one(lp, args.rule)
        result = solve(lp, start, args.rule, max_iterations=args.max_iter, on_cycle=args.on_cycle)
    except Infeasible as exc:
        return _fail(ExitCode.INFEASIBLE, str(exc))
    except InfeasibleInitialBasis as exc:
        return _fail(ExitCode.INFEASIBLE, str(exc))
    except (SingularBasis, DimensionMismatch) as exc:
        return _fail(ExitCode.PARSE_ERROR, f"bad initial_basis: {exc}")
    _emit(solve_result_to_dict(result, lp.name), args.trace)
    if result.status is SolveStatus.OPTIMAL:
        print(f"optimal z = {format_rational(result.z)}")
    else:
        print(result.status.value)
    print(f"iterations = {result.iterations}")
    print(f"distinct bfs = {result.distinct_bfs_count}")
    return int(_STATUS_EXIT[result.status])


def cmd_enumerate(args) -> int:
    try:
        f = read_lp_file(args.file)
    except _PARSE_ERRORS as exc:
        return _fail(ExitCode.PARSE_ERROR, str(exc))
    try:
        census = enumerate_vertices(f.lp, budget=_budget(args))
    except BudgetExceeded as exc:
        return _fail(ExitCode.BUDGET_EXCEEDED, str(exc))
    except NoFeasibleBasis as exc:
        return _fail(ExitCode.INFEASIBLE, str(exc))
    _emit(census_to_dict(census, f.lp.name), args.out)
    print(f"vertices = {len(census.distinct_vertices)}")
    print(f"feasible bases = {len(census.feasible_bases)}")
    print(f"delta = {format_rational(census.delta)}")
    print(f"gamma = {format_rational(census.gamma)}")
    print(f"z* = {format_rational(census.z_star)}")
    return int(ExitCode.OK)


def cmd_verify(args) -> int:
    try:
        f = read_lp_file(args.file)
    except _PARSE_ERRORS as exc:
        return _fail(ExitCode.PARSE_ERROR, str(exc))
    meta = f.metadata
    try:
        b_l1 = parse_rational(meta["b_l1"]) if "b_l1" in meta else None
        theta = parse_rational(meta["theta"]) if "theta" in meta else None
    except RationalParseError as exc:
        return _fail(ExitCode.PARSE_ERROR, f"metadata: {exc}")
    try:
        report = verify_instance(
            f.lp,
            args.rule,
            f.initial_basis,
            b_l1=b_l1,
            theta=theta,
            max_iterations=args.max_iter,
            on_cycle=args.on_cycle,
            budget=_budget(args),
        )
    except BudgetExceeded as exc:
        return _fail(ExitCode.BUDGET_EXCEEDED, str(exc))
    except (NoFeasibleBasis, Infeasible, InfeasibleInitialBasis) as exc:
        return _fail(ExitCode.INFEASIBLE, str(exc))
    except UnboundedLP as exc:
        return _fail(ExitCode.UNBOUNDED, str(exc))
    except (SingularBasis, DimensionMismatch) as exc:
        return _fail(ExitCode.PARSE_ERROR, f"bad initial_basis: {exc}")

    _emit(report_to_dict(report), args.out)
    _emit(solve_result_to_dict(report.result, f.lp.name), args.trace)
    print(f"status = {report.status.value}")
    print(f"z* = {format_rational(report.z_star)}")
    print(f"distinct bfs = {report.observed_distinct_bfs} (bound {report.distinct_bfs_bound})")
    print(f"iterations = {report.observed_iterations}")
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.evaluated} evaluated, {c.skipped} skipped)")
    print(f"overall = {'pass' if report.overall_pass else 'FAIL'}")
    if report.status in (SolveStatus.CYCLE_DETECTED, SolveStatus.ITERATION_LIMIT):
        return int(_STATUS_EXIT[report.status])
    return int(ExitCode.OK if report.overall_pass else ExitCode.CHECK_FAILED)


def cmd_generate(args) -> int:
    kind = args.kind
    initial_basis = None
    try:
        if kind == "mdp":
            theta = parse_rational(args.theta)
            lp = generators.gen_mdp(args.m, theta, args.seed)
            metadata = {"generator": "mdp", "m": args.m, "theta": theta, "seed": args.seed}
            initial_basis = range(args.m)
        elif kind == "tu":
            lp = generators.gen_tu_network(args.nodes, args.arcs, args.seed)
            b_l1 = sum(abs(v) for v in lp.b)
            metadata = {"generator": "tu", "nodes": args.nodes, "arcs": args.arcs, "seed": args.seed, "b_l1": b_l1}
        elif kind == "km":
            lp = generators.gen_klee_minty(args.d)
            metadata = {"generator": "km", "d": args.d}
            initial_basis = range(args.d, 2 * args.d)
        else:
            lp = generators.gen_random_dense(args.m, args.n, args.seed)
            metadata = {"generator": "random", "m": args.m, "n": args.n, "seed": args.seed}
    except GenerationFailed as exc:
        return _fail(ExitCode.GENERATION_FAILED, str(exc))
    except (ValueError, RationalParseError) as exc:
        return _fail(ExitCode.USAGE, str(exc))
    doc = lp_to_dict(lp, initial_basis, metadata)
    if args.out:
        write_json(args.out, doc)
    else:
        sys.stdout.write(dumps(doc))
    return int(ExitCode.OK)


def _add_solver_options(p: argparse.ArgumentParser, rules) -> None:
    p.add_argument("--rule", type=PivotRule.parse, default=PivotRule.MOST_NEGATIVE, choices=rules,
                   metavar="{" + ",".join(r.value for r in rules) + "}")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--on-cycle", type=CycleMode, default=CycleMode.BLAND_FALLBACK, choices=list(CycleMode),
                   metavar="{error,bland}")


def _add_budget_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help=f"max bases to enumerate (env {BUDGET_ENV})")
    p.add_argument("--no-budget", action="store_true", help="disable the enumeration budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lplab", description="Exact simplex runs checked against vertex enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the simplex method on an LP file")
    p.add_argument("file")
    _add_solver_options(p, list(PivotRule))
    p.add_argument("--trace", help="write the full iteration trace as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="enumerate every basis of an LP file")
    p.add_argument("file")
    p.add_argument("--out")
    _add_budget_options(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="solve, enumerate and check every bound")
    p.add_argument("file")
    _add_solver_options(p, [PivotRule.MOST_NEGATIVE, PivotRule.BEST_IMPROVEMENT])
    p.add_argument("--out", help="write the verify report as JSON")
    p.add_argument("--trace", help="write the solve trace as JSON")
    _add_budget_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a generated LP file")
    p.add_argument("kind", choices=["tu", "mdp", "km", "random"])
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--theta", default="1/2")
    p.add_argument("--nodes", type=int, default=4)
    p.add_argument("--arcs", type=int, default=6)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
