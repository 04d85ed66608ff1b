"""Exact-arithmetic simplex laboratory.

Solves standard-form LPs ``min c^T x, A x = b, x >= 0`` with the
most-negative, best-improvement and Bland pivot rules, enumerates every
basis as an independent oracle, and checks iteration-count bounds that
depend on the smallest and largest positive entries over all vertices.
"""

from lplab.bounds import (
    distinct_bfs_bound,
    mdp_bound,
    second_optimal_bound,
    strict_ceil,
    strict_ceil_xlog,
    tu_bound,
)
from lplab.lp import Basis, BasicSolution, DualCertificate, LinearProgram, basis_solve, dual_from_basis, reduced_costs, validate
from lplab.oracle import VertexCensus, certify_optimal, enumerate_vertices
from lplab.simplex import CycleMode, IterateRecord, PivotRule, SolveResult, SolveStatus, phase_one, solve
from lplab.verify import VerifyReport, verify_instance

__all__ = [
    "Basis",
    "BasicSolution",
    "CycleMode",
    "DualCertificate",
    "IterateRecord",
    "LinearProgram",
    "PivotRule",
    "SolveResult",
    "SolveStatus",
    "VerifyReport",
    "VertexCensus",
    "basis_solve",
    "certify_optimal",
    "distinct_bfs_bound",
    "dual_from_basis",
    "enumerate_vertices",
    "mdp_bound",
    "phase_one",
    "reduced_costs",
    "second_optimal_bound",
    "solve",
    "strict_ceil",
    "strict_ceil_xlog",
    "tu_bound",
    "validate",
    "verify_instance",
]
