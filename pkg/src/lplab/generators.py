"""Instance families: two-action MDPs, network flows, Klee-Minty cubes and
random dense LPs.

All generators are deterministic functions of their arguments; randomness
comes from a private :class:`random.Random` seeded by the caller.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from lplab import linalg
from lplab.errors import BudgetExceeded, GenerationFailed, Infeasible
from lplab.lp import LinearProgram, validate
from lplab.rational import to_rational

TU_BUDGET = 10**6


# -- Markov decision problems ----------------------------------------------


@dataclass(frozen=True)
class MdpSpec:
    """Two-action discounted MDP.  ``P1[i][j]`` is the probability of moving
    from state ``i`` to state ``j`` under action 1 (rows sum to one)."""

    theta: Fraction
    P1: tuple[tuple[Fraction, ...], ...]
    P2: tuple[tuple[Fraction, ...], ...]
    c1: tuple[Fraction, ...]
    c2: tuple[Fraction, ...]

    def __post_init__(self):
        theta = to_rational(self.theta)
        if not 0 < theta < 1:
            raise ValueError(f"discount must lie in (0, 1), got {theta}")
        object.__setattr__(self, "theta", theta)
        m = len(self.c1)
        for name in ("P1", "P2"):
            P = tuple(tuple(to_rational(v) for v in row) for row in getattr(self, name))
            if len(P) != m or any(len(row) != m for row in P):
                raise ValueError(f"{name} must be {m}x{m}")
            for row in P:
                if any(v < 0 for v in row) or sum(row) != 1:
                    raise ValueError(f"{name} has a row that is not a probability vector: {row}")
            object.__setattr__(self, name, P)
        for name in ("c1", "c2"):
            vec = tuple(to_rational(v) for v in getattr(self, name))
            if len(vec) != m:
                raise ValueError(f"{name} must have length {m}")
            object.__setattr__(self, name, vec)

    @property
    def m(self) -> int:
        return len(self.c1)


def mdp_lp(spec: MdpSpec, name: str = "") -> LinearProgram:
    """Occupation-measure LP of a two-action MDP.

    Column ``(i, a)`` is ``e_i - theta * P_a[i, :]^T``: the transition
    matrices enter transposed, so every column sums to ``1 - theta``.
    """
    m, theta = spec.m, spec.theta
    A = []
    for r in range(m):
        row = []
        for P in (spec.P1, spec.P2):
            row.extend(Fraction(int(r == i)) - theta * P[i][r] for i in range(m))
        A.append(row)
    return validate(A, [1] * m, list(spec.c1) + list(spec.c2), name or f"mdp_m{m}")


def _stochastic_row(rng: random.Random, m: int) -> list[Fraction]:
    while True:
        weights = [rng.randint(0, 4) for _ in range(m)]
        total = sum(weights)
        if total:
            return [Fraction(w, total) for w in weights]


def random_mdp_spec(m: int, theta, seed: int) -> MdpSpec:
    if m < 1:
        raise ValueError("need at least one state")
    rng = random.Random(seed)
    P1 = [_stochastic_row(rng, m) for _ in range(m)]
    P2 = [_stochastic_row(rng, m) for _ in range(m)]
    c1 = [rng.randint(-5, 10) for _ in range(m)]
    c2 = [rng.randint(-5, 10) for _ in range(m)]
    return MdpSpec(to_rational(theta), P1, P2, c1, c2)


def gen_mdp(m: int, theta, seed: int) -> LinearProgram:
    """Random two-action MDP LP with ``n = 2m`` columns and ``b = e``."""
    theta = to_rational(theta)
    return mdp_lp(random_mdp_spec(m, theta, seed), f"mdp_m{m}_theta{theta}_seed{seed}")


# -- network flows ----------------------------------------------------------


@dataclass(frozen=True)
class TuNetworkSpec:
    nodes: int
    arcs: tuple[tuple[int, int], ...]
    supplies: tuple[int, ...]
    costs: tuple[int, ...]

    def __post_init__(self):
        if len(self.supplies) != self.nodes:
            raise ValueError("one supply per node required")
        if sum(self.supplies) != 0:
            raise ValueError(f"supplies must sum to zero, got {sum(self.supplies)}")
        if len(self.costs) != len(self.arcs):
            raise ValueError("one cost per arc required")
        for tail, head in self.arcs:
            if tail == head or not (0 <= tail < self.nodes and 0 <= head < self.nodes):
                raise ValueError(f"bad arc {(tail, head)}")


def incidence_matrix(nodes: int, arcs: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Node-arc incidence: +1 at the tail, -1 at the head of every arc."""
    M = [[0] * len(arcs) for _ in range(nodes)]
    for k, (tail, head) in enumerate(arcs):
        M[tail][k] = 1
        M[head][k] = -1
    return M


def network_lp(spec: TuNetworkSpec, name: str = "") -> LinearProgram:
    """Min-cost flow LP; the last node's conservation row is dropped."""
    M = incidence_matrix(spec.nodes, spec.arcs)
    return validate(M[:-1], spec.supplies[:-1], spec.costs, name or f"net_{spec.nodes}n{len(spec.arcs)}a")


def random_network_spec(nodes: int, arcs: int, seed: int, *, max_retries: int = 100) -> TuNetworkSpec:
    if nodes < 2:
        raise GenerationFailed("need at least two nodes")
    if not nodes - 1 <= arcs <= nodes * (nodes - 1):
        raise GenerationFailed(f"{arcs} arcs cannot connect {nodes} nodes without parallel arcs")
    rng = random.Random(seed)
    for _ in range(max_retries):
        order = list(range(nodes))
        rng.shuffle(order)
        chosen: list[tuple[int, int]] = []
        for pos in range(1, nodes):
            u, v = order[pos], order[rng.randrange(pos)]
            chosen.append((u, v) if rng.random() < 0.5 else (v, u))
        spare = [(u, v) for u in range(nodes) for v in range(nodes) if u != v and (u, v) not in chosen]
        chosen += rng.sample(spare, arcs - len(chosen))
        rng.shuffle(chosen)
        flow = [rng.randint(0, 3) for _ in chosen]
        M = incidence_matrix(nodes, chosen)
        supplies = [sum(a * f for a, f in zip(row, flow)) for row in M]
        if any(supplies[:-1]):
            costs = [rng.randint(0, 5) for _ in chosen]
            return TuNetworkSpec(nodes, tuple(chosen), tuple(supplies), tuple(costs))
    raise GenerationFailed(f"no nonzero supply vector after {max_retries} retries")


def gen_tu_network(nodes: int, arcs: int, seed: int) -> LinearProgram:
    """Random connected min-cost flow LP with integral supplies.

    Supplies come from a random nonnegative integral flow, so the LP is
    feasible; nonnegative costs keep it bounded.
    """
    spec = random_network_spec(nodes, arcs, seed)
    return network_lp(spec, f"tu_{nodes}n{arcs}a_seed{seed}")


def is_totally_unimodular(A, *, budget: int | None = TU_BUDGET) -> bool:
    """Exhaustive check that every square submatrix has determinant in {-1, 0, 1}."""
    rows = [[to_rational(v) for v in row] for row in A]
    if not rows:
        return True
    m, n = len(rows), len(rows[0])
    work = sum(comb(m, k) * comb(n, k) for k in range(1, min(m, n) + 1))
    if budget is not None and work > budget:
        raise BudgetExceeded(work, budget)
    if any(v not in (-1, 0, 1) for row in rows for v in row):
        return False
    for k in range(2, min(m, n) + 1):
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                if abs(linalg.det([[rows[i][j] for j in ci] for i in ri])) > 1:
                    return False
    return True


# -- Klee-Minty -------------------------------------------------------------


def gen_klee_minty(d: int) -> LinearProgram:
    """Klee-Minty cube in Chvatal's form, with slacks.

    ``max sum_j 2^(d-j) x_j`` subject to
    ``2 * sum_{j<i} 2^(i-j) x_j + x_i <= 5^(i-1)`` for ``i = 1..d``,
    written as a minimization with ``m = d`` rows and ``n = 2d`` columns.
    From the slack basis the most-negative rule makes ``2^d - 1`` pivots.
    The ratio gamma/delta over its vertices grows like ``5^(d-1)``, so the
    distinct-vertex bound stays consistent with the exponential count.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    A, b = [], []
    for i in range(d):
        row = [0] * (2 * d)
        for j in range(i):
            row[j] = 2 ** (i - j + 1)
        row[i] = 1
        row[d + i] = 1
        A.append(row)
        b.append(5**i)
    c = [-(2 ** (d - 1 - j)) for j in range(d)] + [0] * d
    return validate(A, b, c, f"klee_minty_d{d}")


# -- random dense -----------------------------------------------------------


def _small_rational(rng: random.Random, lo: int, hi: int, max_den: int) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def gen_random_dense(m: int, n: int, seed: int, *, max_rejections: int = 200) -> LinearProgram:
    """Random feasible, bounded LP.

    ``A`` is resampled until it has full row rank; ``b = A x_hat`` for a
    random ``x_hat >= 0`` with at least ``m`` positive entries; ``c`` is
    resampled until the simplex method reports an optimum.
    """
    from lplab.simplex import SolveStatus, phase_one, solve

    if not n > m >= 1:
        raise ValueError(f"need n > m >= 1, got m={m}, n={n}")
    rng = random.Random(seed)
    for _ in range(max_rejections):
        A = [[_small_rational(rng, -9, 9, 3) for _ in range(n)] for _ in range(m)]
        if linalg.rank(A) == m:
            break
    else:
        raise GenerationFailed(f"no full-rank {m}x{n} matrix after {max_rejections} draws")

    support = rng.sample(range(n), rng.randint(m, n))
    x_hat = [_small_rational(rng, 1, 9, 3) if j in support else Fraction(0) for j in range(n)]
    b = linalg.matvec(A, x_hat)
    name = f"random_m{m}_n{n}_seed{seed}"
    feasible = validate(A, b, [0] * n, name)
    try:
        start = phase_one(feasible)
    except Infeasible:  # pragma: no cover - x_hat is feasible by construction
        raise GenerationFailed("constructed point is not feasible") from None

    for _ in range(max_rejections):
        c = [_small_rational(rng, -9, 9, 3) for _ in range(n)]
        lp = feasible.with_objective(c)
        if solve(lp, start).status is SolveStatus.OPTIMAL:
            return lp
    raise GenerationFailed(f"every objective drawn for {name} was unbounded")
