"""Acceptance criteria, one test each.  Every test prints a single
``PASS``/``FAIL`` line (visible with or without ``-s``) before asserting."""

import random
import time
from fractions import Fraction as F

import pytest

from lplab.bounds import distinct_bfs_bound, mdp_bound, strict_ceil, tu_bound
from lplab.cli import main
from lplab.generators import (
    gen_klee_minty,
    gen_mdp,
    gen_random_dense,
    gen_tu_network,
    incidence_matrix,
    is_totally_unimodular,
)
from lplab.lp import validate
from lplab.serialize import write_lp_file
from lplab.simplex import PivotRule, SolveStatus
from lplab.verify import verify_instance

RULES = (PivotRule.MOST_NEGATIVE, PivotRule.BEST_IMPROVEMENT)
THETAS = (F(1, 2), F(3, 4), F(9, 10))
INEQUALITY_CHECKS = {
    "optimal_value_lower_bound",
    "gap_reduction",
    "slack_witness",
    "witness_decay",
    "witness_vanishes",
    "distinct_bfs_bound",
    "second_optimal_bound",
    "nondegenerate_iteration_bound",
}


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def _random_shape(seed: int) -> tuple[int, int]:
    m = 1 + seed % 5
    n = m + 1 + (seed // 5) % (10 - m)
    return m, n


@pytest.fixture(scope="module")
def random_corpus():
    started = time.perf_counter()
    runs = []
    for seed in range(200):
        m, n = _random_shape(seed)
        lp = gen_random_dense(m, n, seed)
        for rule in RULES:
            runs.append((lp, rule, verify_instance(lp, rule)))
    return runs, time.perf_counter() - started


@pytest.fixture(scope="module")
def tu_corpus():
    runs = []
    for seed in range(50):
        nodes = 2 + seed % 4
        arcs = min(8, nodes * (nodes - 1), nodes - 1 + (seed // 4) % 6)
        lp = gen_tu_network(nodes, arcs, seed)
        b_l1 = sum(abs(v) for v in lp.b)
        for rule in RULES:
            runs.append((lp, rule, verify_instance(lp, rule, b_l1=b_l1)))
    return runs


@pytest.fixture(scope="module")
def mdp_corpus():
    runs = []
    for seed in range(60):
        m, theta = 1 + seed % 4, THETAS[(seed // 4) % 3]
        lp = gen_mdp(m, theta, seed)
        for rule in RULES:
            runs.append((lp, rule, theta, verify_instance(lp, rule, range(m), theta=theta)))
    return runs


@pytest.fixture(scope="module")
def km_corpus():
    return [
        (gen_klee_minty(d), rule, verify_instance(gen_klee_minty(d), rule, range(d, 2 * d)))
        for d in range(1, 5)
        for rule in RULES
    ]


def test_worked_example(report):
    started = time.perf_counter()
    lp = validate([[1, 1, 1, 0], [0, 1, 0, 1]], [2, 1], [-1, -1, 0, 0], "example")
    rep = verify_instance(lp, PivotRule.MOST_NEGATIVE, [2, 3])
    elapsed = time.perf_counter() - started
    ok = (
        rep.status is SolveStatus.OPTIMAL
        and rep.z == -2
        and rep.observed_iterations == 1
        and rep.observed_distinct_bfs == 2
        and (rep.delta, rep.gamma, rep.second_value) == (1, 2, -1)
        and rep.distinct_bfs_bound == 24
        and rep.second_optimal_bound == 3
        and rep.overall_pass
        and elapsed < 1.0
    )
    report(1, "worked example reproduction", ok, f"{elapsed:.3f}s, failed={rep.failed_checks()}")


def test_oracle_equivalence(report, random_corpus):
    runs, elapsed = random_corpus
    instances = {lp.name for lp, _rule, _rep in runs}
    mismatches = [(lp.name, rule.value) for lp, rule, rep in runs if rep.z != rep.z_star]
    shapes_ok = all(lp.m <= 5 and lp.n <= 10 for lp, _r, _rep in runs)
    ok = len(instances) >= 200 and shapes_ok and not mismatches and elapsed < 300
    report(2, "solver z equals census z* for both rules", ok,
           f"{len(instances)} instances, {len(mismatches)} mismatches, {elapsed:.1f}s")


def test_inequality_suite(report, random_corpus):
    runs, _elapsed = random_corpus
    violations = []
    evaluated = 0
    for lp, rule, rep in runs:
        for check in rep.checks:
            if check.name in INEQUALITY_CHECKS:
                evaluated += check.evaluated
                if not check.passed:
                    violations.append((lp.name, rule.value, check.name, check.failures[:1]))
    report(3, "inequality suite with exact comparisons", not violations and evaluated > 0,
           f"{evaluated} verdicts, {len(violations)} violations {violations[:3]}")


def test_distinct_vertex_bound_on_full_corpus(report, random_corpus, tu_corpus, mdp_corpus, km_corpus):
    rows = [(lp, rep) for lp, _r, rep in random_corpus[0]]
    rows += [(lp, rep) for lp, _r, rep in tu_corpus]
    rows += [(lp, rep) for lp, _r, _t, rep in mdp_corpus]
    rows += [(lp, rep) for lp, _r, rep in km_corpus]
    exceptions = []
    for lp, rep in rows:
        bound = distinct_bfs_bound(lp.m, lp.n, rep.delta, rep.gamma)
        if rep.observed_distinct_bfs > bound:
            exceptions.append((lp.name, rep.observed_distinct_bfs, bound))
    km_exponential = all(rep.observed_iterations == 2**lp.m - 1
                         for lp, r, rep in km_corpus if r is PivotRule.MOST_NEGATIVE)
    report(4, "distinct vertices within n*ceil(r ln r)", not exceptions and km_exponential,
           f"{len(rows)} runs, {len(exceptions)} exceptions")


def test_network_instance_bounds(report, tu_corpus):
    problems = []
    for lp, rule, rep in tu_corpus:
        census = rep.census
        b_l1 = sum(abs(v) for v in lp.b)
        integral = all(x.denominator == 1 for v in census.distinct_vertices for x in v.x)
        bound = tu_bound(lp.m, lp.n, b_l1)
        if not (integral and census.delta >= 1 and census.gamma <= b_l1 and rep.observed_distinct_bfs <= bound):
            problems.append((lp.name, rule.value))
        if not rep.overall_pass:
            problems.append((lp.name, rule.value, rep.failed_checks()))
    instances = {lp.name for lp, _r, _rep in tu_corpus}
    shapes_ok = all(lp.m + 1 <= 5 and lp.n <= 8 for lp, _r, _rep in tu_corpus)
    report(5, "network-flow (TU) instance bounds", len(instances) >= 50 and shapes_ok and not problems,
           f"{len(instances)} instances, problems={problems[:3]}")


def test_mdp_instance_bounds(report, mdp_corpus):
    problems = []
    for lp, rule, theta, rep in mdp_corpus:
        census = rep.census
        m = lp.m
        ok = (
            census.all_nondegenerate
            and census.delta >= 1
            and census.gamma <= m / (1 - theta)
            and rep.overall_pass
        )
        if rule is PivotRule.MOST_NEGATIVE:
            ok = ok and rep.observed_iterations <= mdp_bound(m, theta)
        if not ok:
            problems.append((lp.name, rule.value, rep.failed_checks()))
    instances = {lp.name for lp, *_ in mdp_corpus}
    covered = {(lp.m, theta) for lp, _r, theta, _rep in mdp_corpus}
    full_grid = covered == {(m, t) for m in range(1, 5) for t in THETAS}
    report(6, "two-action MDP instance bounds", len(instances) >= 50 and full_grid and not problems
           and mdp_bound(2, F(1, 2)) == 68, f"{len(instances)} instances, problems={problems[:3]}")


def test_strict_ceil_contract(report):
    rng = random.Random(2024)
    samples = [F(rng.randint(-10**6, 10**6), rng.randint(1, 10**3)) for _ in range(1000)]
    samples += [F(k) for k in range(-5, 6)]
    bad = [a for a in samples if not a < strict_ceil(a) <= a + 1]
    fixed = strict_ceil(0) == 1 and strict_ceil(5) == 6 and strict_ceil(F(-1, 2)) == 0
    report(7, "strict ceiling contract", fixed and not bad, f"{len(samples)} samples, {len(bad)} bad")


def test_tu_oracle(report, tu_corpus):
    names = set()
    failures = []
    for lp, _r, _rep in tu_corpus:
        if lp.name in names:
            continue
        names.add(lp.name)
        if not is_totally_unimodular(lp.A):
            failures.append(lp.name)
    full = incidence_matrix(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])
    ok = not failures and is_totally_unimodular(full) and not is_totally_unimodular([[1, 1], [-1, 1]])
    report(8, "brute-force TU oracle", ok, f"{len(names)} incidence matrices, failures={failures[:3]}")


def _run_twice(tmp_path, lp_path, tag, args):
    outputs = []
    for attempt in range(2):
        trace = tmp_path / f"{tag}_{attempt}_trace.json"
        rep = tmp_path / f"{tag}_{attempt}_report.json"
        code = main(["verify", str(lp_path), *args, "--trace", str(trace), "--out", str(rep)])
        outputs.append((code, trace.read_bytes(), rep.read_bytes()))
    return outputs[0] == outputs[1] and outputs[0][0] == 0


def test_determinism(report, tmp_path, capsys):
    cases = [
        ("example", validate([[1, 1, 1, 0], [0, 1, 0, 1]], [2, 1], [-1, -1, 0, 0], "example"), [2, 3], {}),
        ("random", gen_random_dense(4, 8, 17), None, {}),
        ("mdp", gen_mdp(3, F(3, 4), 5), range(3), {"theta": F(3, 4)}),
        ("km", gen_klee_minty(3), range(3, 6), {}),
    ]
    identical = []
    for tag, lp, basis, meta in cases:
        path = tmp_path / f"{tag}.json"
        write_lp_file(path, lp, basis, meta)
        for rule in ("dantzig", "best"):
            identical.append(_run_twice(tmp_path, path, f"{tag}_{rule}", ["--rule", rule]))
    regenerated = gen_random_dense(4, 8, 17) == gen_random_dense(4, 8, 17)
    capsys.readouterr()
    report(9, "byte-identical trace and report files", all(identical) and regenerated,
           f"{sum(identical)}/{len(identical)} runs identical")
