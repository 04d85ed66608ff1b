"""Iteration-count bounds for the simplex method and trace-level checks of
the inequalities behind them.

Every comparison is exact.  The only irrational quantity is a natural
logarithm, which is enclosed in a certified rational interval narrow enough
to pin down the integer result (:func:`strict_ceil_xlog`).

Check functions never raise on a violated inequality; they return
:class:`Verdict` objects carrying the exact witness values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import libmp
from mpmath.libmp import libmpi

from lplab.errors import NotApplicable
from lplab.simplex import IterateRecord, PivotRule, SolveResult

PASS, FAIL, SKIP = "pass", "fail", "skip"

_MAX_PREC = 1 << 16
_ANALYZED_RULES = (PivotRule.MOST_NEGATIVE, PivotRule.BEST_IMPROVEMENT)


# -- ceilings and certified logarithms -------------------------------------


def strict_ceil(a) -> int:
    """Smallest integer strictly greater than ``a`` (so ``strict_ceil(5) == 6``)."""
    return math.floor(Fraction(a)) + 1


def _mpf_to_fraction(v) -> Fraction:
    if v == libmp.fzero:
        return Fraction(0)
    sign, man, exp, _bc = v
    if not man:
        raise ArithmeticError(f"non-finite interval endpoint {v}")
    q = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -q if sign else q


def _rational_interval(q: Fraction, prec: int):
    return (
        libmp.from_rational(q.numerator, q.denominator, prec, libmp.round_floor),
        libmp.from_rational(q.numerator, q.denominator, prec, libmp.round_ceiling),
    )


def xlog_bracket(coef, arg, prec: int = 64) -> tuple[Fraction, Fraction]:
    """Rational interval ``[lo, hi]`` certified to contain ``coef * ln(arg)``."""
    coef, arg = Fraction(coef), Fraction(arg)
    if arg <= 0:
        raise ValueError(f"logarithm of nonpositive {arg}")
    log = libmpi.mpi_log(_rational_interval(arg, prec), prec)
    prod = libmpi.mpi_mul(_rational_interval(coef, prec), log, prec)
    return _mpf_to_fraction(prod[0]), _mpf_to_fraction(prod[1])


def strict_ceil_xlog(coef, arg) -> int:
    """``strict_ceil(coef * ln(arg))`` for rationals ``coef`` and ``arg > 0``.

    For rational ``arg != 1`` the logarithm is irrational, so a nonzero
    product is never an integer and a fine enough enclosure separates it
    from the integers.  Precision doubles until the enclosure is narrower
    than its distance to the nearest integer.
    """
    coef, arg = Fraction(coef), Fraction(arg)
    if arg <= 0:
        raise ValueError(f"logarithm of nonpositive {arg}")
    if coef == 0 or arg == 1:
        return strict_ceil(0)
    prec = 64
    while prec <= _MAX_PREC:
        lo, hi = xlog_bracket(coef, arg, prec)
        k = math.floor(lo)
        width = hi - lo
        if width < lo - k and width < k + 1 - hi:
            return k + 1
        prec *= 2
    raise ArithmeticError(f"could not separate {coef}*ln({arg}) from an integer")


# -- bound formulas ---------------------------------------------------------


def _ratio(m: int, delta, gamma) -> Fraction:
    delta, gamma = Fraction(delta), Fraction(gamma)
    if delta <= 0 or gamma < delta:
        raise ValueError(f"need 0 < delta <= gamma, got delta={delta}, gamma={gamma}")
    return m * gamma / delta


def vanishing_threshold(m: int, delta, gamma) -> int:
    """``strict_ceil(r ln r)`` with ``r = m*gamma/delta``: the number of new
    vertices after which some basic variable is zero for good."""
    r = _ratio(m, delta, gamma)
    return strict_ceil_xlog(r, r)


def distinct_bfs_bound(m: int, n: int, delta, gamma) -> int:
    """Upper bound on distinct basic feasible solutions visited under the
    most-negative or best-improvement rule."""
    return n * vanishing_threshold(m, delta, gamma)


def second_optimal_bound(m: int, delta, gamma, initial_objective, z_star, second_value) -> int:
    """Objective-dependent bound on the number of improving pivots.

    ``strict_ceil(m*gamma/delta * ln((c x0 - z*) / (second - z*)))``, or 0 if
    the start is already optimal.  Raises :class:`NotApplicable` when every
    vertex is optimal.
    """
    if second_value is None:
        raise NotApplicable("every vertex is optimal; there is no second-best value")
    x0, z, second = Fraction(initial_objective), Fraction(z_star), Fraction(second_value)
    if x0 == z:
        return 0
    if second <= z or x0 < z:
        raise ValueError("need initial_objective >= z_star and second_value > z_star")
    return strict_ceil_xlog(_ratio(m, delta, gamma), (x0 - z) / (second - z))


def tu_bound(m: int, n: int, b_l1) -> int:
    """Distinct-vertex bound for a totally unimodular ``A`` and integral ``b``."""
    r = m * Fraction(b_l1)
    if r < 1:
        raise ValueError(f"need ||b||_1 >= 1, got {b_l1}")
    return n * strict_ceil_xlog(r, r)


def mdp_bound(m: int, theta) -> int:
    """Iteration bound for the two-action discounted MDP LP (``n = 2m``)."""
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"discount must lie in (0, 1), got {theta}")
    r = Fraction(m * m) / (1 - theta)
    return 2 * m * strict_ceil_xlog(r, r)


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str
    t: int | None = None
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL


@dataclass(frozen=True)
class CheckSummary:
    name: str
    passed: bool
    evaluated: int
    skipped: int
    failures: tuple[dict, ...]


def summarize(verdicts: Iterable[Verdict]) -> list[CheckSummary]:
    """Group verdicts by check name, keeping first-seen order."""
    groups: dict[str, list[Verdict]] = {}
    for v in verdicts:
        groups.setdefault(v.name, []).append(v)
    out = []
    for name, vs in groups.items():
        fails = tuple(dict(v.witness, t=v.t) for v in vs if v.status == FAIL)
        out.append(
            CheckSummary(
                name=name,
                passed=not fails,
                evaluated=sum(1 for v in vs if v.status != SKIP),
                skipped=sum(1 for v in vs if v.status == SKIP),
                failures=fails,
            )
        )
    return out


def verdict(name: str, ok: bool, t=None, **witness) -> Verdict:
    return Verdict(name, PASS if ok else FAIL, t, witness)


# -- per-iterate checks -----------------------------------------------------


def check_lower_bound(trace: Sequence[IterateRecord], z_star, m: int, gamma) -> list[Verdict]:
    """``z* >= c x^t - delta_t * m * gamma`` at every non-optimal iterate."""
    z_star, gamma = Fraction(z_star), Fraction(gamma)
    out = []
    for rec in trace:
        if rec.optimal:
            out.append(Verdict("optimal_value_lower_bound", SKIP, rec.t, {"reason": "optimal iterate"}))
            continue
        bound = rec.objective - rec.delta_t * m * gamma
        out.append(
            verdict(
                "optimal_value_lower_bound",
                z_star >= bound,
                rec.t,
                z_star=z_star,
                objective=rec.objective,
                delta_t=rec.delta_t,
                lower_bound=bound,
            )
        )
    return out


def check_gap_reduction(trace: Sequence[IterateRecord], z_star, m: int, delta, gamma) -> list[Verdict]:
    """``c x^{t+1} - z* <= (1 - delta/(m gamma)) (c x^t - z*)`` whenever the
    pivot moves to a new point.

    Degenerate pivots are exempt.  Pivots taken by the anti-cycling
    fallback are not covered by the inequality and are skipped as well.
    """
    z_star = Fraction(z_star)
    factor = 1 - Fraction(delta) / (m * Fraction(gamma))
    out = []
    for prev, cur in zip(trace, trace[1:]):
        if not cur.new_bfs:
            out.append(Verdict("gap_reduction", SKIP, prev.t, {"reason": "degenerate pivot"}))
            continue
        if cur.rule not in _ANALYZED_RULES:
            out.append(Verdict("gap_reduction", SKIP, prev.t, {"reason": f"{cur.rule.value} fallback pivot"}))
            continue
        before, after = prev.objective - z_star, cur.objective - z_star
        out.append(
            verdict(
                "gap_reduction",
                after <= factor * before,
                prev.t,
                gap_before=before,
                gap_after=after,
                factor=factor,
            )
        )
    return out


def witness_index(rec: IterateRecord, s_star: Sequence[Fraction]) -> int:
    """Basic index maximizing ``s*_j x_j``; lowest index on ties."""
    return max(rec.basis.indices, key=lambda j: (s_star[j] * rec.x[j], -j))


def check_vanishing_witness(
    trace: Sequence[IterateRecord], s_star, z_star, m: int, delta, gamma
) -> list[Verdict]:
    """Witness-variable checks at every iterate whose objective is above ``z*``.

    For the basic index ``j`` maximizing ``s*_j x^t_j``:

    * ``slack_witness``: ``x^t_j > 0`` and ``s*_j x^t_j >= (c x^t - z*) / m``;
    * ``witness_decay``: ``x^k_j <= m (c x^k - z*) / (c x^t - z*) * x^t_j``
      for every iterate ``k``;
    * ``witness_vanishes``: once the number of new vertices after ``t``
      reaches :func:`vanishing_threshold`, ``x^k_j == 0`` from then on.
    """
    s_star = [Fraction(v) for v in s_star]
    z_star = Fraction(z_star)
    threshold = vanishing_threshold(m, delta, gamma)
    out = []
    for rec in trace:
        gap = rec.objective - z_star
        if gap == 0:
            for name in ("slack_witness", "witness_decay", "witness_vanishes"):
                out.append(Verdict(name, SKIP, rec.t, {"reason": "optimal objective"}))
            continue
        j = witness_index(rec, s_star)
        xj, sj = rec.x[j], s_star[j]
        out.append(
            verdict(
                "slack_witness",
                xj > 0 and sj * xj >= gap / m,
                rec.t,
                index=j,
                x_j=xj,
                s_star_j=sj,
                required=gap / m,
            )
        )

        worst = None
        for other in trace:
            cap = m * (other.objective - z_star) / gap * xj
            if other.x[j] > cap:
                worst = dict(k=other.t, x_kj=other.x[j], cap=cap)
                break
        out.append(verdict("witness_decay", worst is None, rec.t, index=j, **(worst or {})))

        new_vertices = 0
        status, witness = SKIP, {"reason": "threshold not reached", "threshold": threshold}
        for later in trace[rec.t + 1 :]:
            if later.rule not in _ANALYZED_RULES:
                status, witness = SKIP, {"reason": "fallback pivot after t"}
                break
            new_vertices += later.new_bfs
            if new_vertices >= threshold:
                if later.x[j] != 0:
                    status = FAIL
                    witness = dict(index=j, k=later.t, x_kj=later.x[j], new_vertices=new_vertices)
                    break
                status, witness = PASS, {"index": j, "threshold": threshold}
        out.append(Verdict("witness_vanishes", status, rec.t, witness))
    return out


# -- count checks -----------------------------------------------------------


@dataclass(frozen=True)
class BoundInputs:
    m: int
    n: int
    delta: Fraction
    gamma: Fraction
    z_star: Fraction
    second_value: Fraction | None
    initial_objective: Fraction
    b_l1: Fraction | None = None
    theta: Fraction | None = None

    def __post_init__(self):
        if not 0 < self.delta <= self.gamma:
            raise ValueError("need 0 < delta <= gamma")
        if self.second_value is not None and not self.second_value > self.z_star:
            raise ValueError("second_value must exceed z_star")
        if self.theta is not None and not 0 < self.theta < 1:
            raise ValueError("theta must lie in (0, 1)")


def check_counts(result: SolveResult, inputs: BoundInputs, all_nondegenerate: bool) -> list[Verdict]:
    """Observed vertex and pivot counts against every applicable bound.

    The distinct-vertex count includes the starting point.  The
    second-optimal bound limits improving pivots, so it is compared with
    the number of distinct points visited after the start.
    """
    m, n = inputs.m, inputs.n
    distinct = result.distinct_bfs_count
    iterations = result.iterations
    general = distinct_bfs_bound(m, n, inputs.delta, inputs.gamma)
    out = [verdict("distinct_bfs_bound", distinct <= general, observed=distinct, bound=general)]

    try:
        cor = second_optimal_bound(
            m, inputs.delta, inputs.gamma, inputs.initial_objective, inputs.z_star, inputs.second_value
        )
    except NotApplicable:
        out.append(Verdict("second_optimal_bound", SKIP, None, {"reason": "all vertices optimal"}))
    else:
        out.append(
            verdict(
                "second_optimal_bound",
                distinct - 1 <= cor,
                observed_after_start=distinct - 1,
                observed_distinct=distinct,
                bound=cor,
            )
        )

    if all_nondegenerate:
        out.append(
            verdict("nondegenerate_iteration_bound", iterations <= general, observed=iterations, bound=general)
        )
    else:
        out.append(Verdict("nondegenerate_iteration_bound", SKIP, None, {"reason": "degenerate vertices exist"}))

    if inputs.b_l1 is not None:
        tu = tu_bound(m, n, inputs.b_l1)
        out.append(verdict("tu_distinct_bfs_bound", distinct <= tu, observed=distinct, bound=tu))
    if inputs.theta is not None:
        md = mdp_bound(m, inputs.theta)
        out.append(verdict("mdp_iteration_bound", iterations <= md, observed=iterations, bound=md))
    return out


def check_tu_census(census, b_l1) -> list[Verdict]:
    """Integral vertices with ``1 <= delta`` and ``gamma <= ||b||_1``."""
    b_l1 = Fraction(b_l1)
    fractional = [x for v in census.distinct_vertices for x in v.x if x.denominator != 1]
    return [
        verdict("tu_integral_vertices", not fractional, example=fractional[0] if fractional else None),
        verdict("tu_delta_at_least_one", census.delta >= 1, delta=census.delta),
        verdict("tu_gamma_at_most_b_l1", census.gamma <= b_l1, gamma=census.gamma, b_l1=b_l1),
    ]


def check_mdp_census(census, m: int, theta) -> list[Verdict]:
    """Nondegeneracy, ``delta >= 1`` and ``gamma <= m / (1 - theta)``."""
    cap = Fraction(m) / (1 - Fraction(theta))
    return [
        verdict("mdp_nondegenerate", census.all_nondegenerate),
        verdict("mdp_delta_at_least_one", census.delta >= 1, delta=census.delta),
        verdict("mdp_gamma_cap", census.gamma <= cap, gamma=census.gamma, cap=cap),
    ]


def default_iteration_limit(m: int, n: int, delta, gamma) -> int:
    return 10 * distinct_bfs_bound(m, n, delta, gamma)
