"""JSON documents for LPs, solve traces, vertex censuses and verify reports.

Rationals are always written as strings (``"p/q"`` or ``"p"``); plain JSON
integers appear only for counts and 0-based column indices.  Every document
carries ``"schema_version": 1`` and a ``"kind"`` tag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from lplab.errors import LpFormatError
from lplab.lp import Basis, LinearProgram, validate
from lplab.oracle import VertexCensus
from lplab.rational import format_rational, to_rational
from lplab.simplex import IterateRecord, SolveResult

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class LpFile:
    lp: LinearProgram
    initial_basis: Basis | None = None
    metadata: dict = field(default_factory=dict)


def _q(v) -> str | None:
    return None if v is None else format_rational(v)


def _vec(xs) -> list[str]:
    return [format_rational(v) for v in xs]


def jsonable(obj: Any) -> Any:
    """Recursively turn Fractions into strings and tuples into lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        raise TypeError(f"refusing to serialize binary float {obj!r}")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "value"):  # enums
        return obj.value
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# -- LP files ---------------------------------------------------------------


def lp_to_dict(lp: LinearProgram, initial_basis=None, metadata: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "lp",
        "name": lp.name,
        "A": [_vec(row) for row in lp.A],
        "b": _vec(lp.b),
        "c": _vec(lp.c),
    }
    if initial_basis is not None:
        doc["initial_basis"] = list(Basis.of(initial_basis).indices)
    if metadata:
        doc["metadata"] = jsonable(metadata)
    return doc


def _rational_entry(v, where: str) -> Fraction:
    if isinstance(v, float):
        raise LpFormatError(f"{where}: binary float {v!r}; write rationals as strings")
    return to_rational(v)


def lp_from_dict(doc: Any) -> LpFile:
    """Parse an LP document.  Raises :class:`LpFormatError` and the
    validation errors of :func:`lplab.lp.validate`."""
    if not isinstance(doc, dict):
        raise LpFormatError("LP document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise LpFormatError(f"unsupported schema_version {version!r}")
    missing = [k for k in ("A", "b", "c") if k not in doc]
    if missing:
        raise LpFormatError(f"missing keys: {', '.join(missing)}")
    A, b, c = doc["A"], doc["b"], doc["c"]
    if not isinstance(A, list) or not all(isinstance(row, list) for row in A):
        raise LpFormatError("A must be an array of arrays")
    if not isinstance(b, list) or not isinstance(c, list):
        raise LpFormatError("b and c must be arrays")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise LpFormatError("name must be a string")
    lp = validate(
        [[_rational_entry(v, f"A[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(A)],
        [_rational_entry(v, f"b[{i}]") for i, v in enumerate(b)],
        [_rational_entry(v, f"c[{j}]") for j, v in enumerate(c)],
        name,
    )
    basis = None
    if doc.get("initial_basis") is not None:
        idx = doc["initial_basis"]
        if not isinstance(idx, list) or not all(isinstance(j, int) and not isinstance(j, bool) for j in idx):
            raise LpFormatError("initial_basis must be an array of integers")
        basis = Basis.of(idx)
    metadata = doc.get("metadata", {})
    if metadata is None:
        metadata = {}
    if not isinstance(metadata, dict):
        raise LpFormatError("metadata must be an object")
    return LpFile(lp, basis, metadata)


def read_lp_file(path: str | Path) -> LpFile:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LpFormatError(f"{path}: invalid JSON ({exc})") from None
    return lp_from_dict(doc)


def write_lp_file(path: str | Path, lp: LinearProgram, initial_basis=None, metadata: dict | None = None) -> None:
    write_json(path, lp_to_dict(lp, initial_basis, metadata))


# -- solve traces -----------------------------------------------------------


def iterate_to_dict(rec: IterateRecord) -> dict:
    return {
        "t": rec.t,
        "basis": list(rec.basis.indices),
        "x": _vec(rec.x),
        "objective": format_rational(rec.objective),
        "reduced_costs": {str(j): format_rational(rec.reduced_costs[j]) for j in sorted(rec.reduced_costs)},
        "delta_t": _q(rec.delta_t),
        "rule": None if rec.rule is None else rec.rule.value,
        "entering": rec.entering,
        "leaving": rec.leaving,
        "step": _q(rec.step),
        "degenerate_pivot": rec.degenerate_pivot,
        "new_bfs": rec.new_bfs,
    }


def solve_result_to_dict(result: SolveResult, instance: str = "") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "solve_result",
        "instance": instance,
        "rule": result.rule.value,
        "status": result.status.value,
        "z": _q(result.z),
        "optimal_basis": None if result.optimal_basis is None else list(result.optimal_basis.indices),
        "optimal_x": None if result.optimal_x is None else _vec(result.optimal_x),
        "iterations": result.iterations,
        "distinct_bfs_count": result.distinct_bfs_count,
        "unbounded_column": result.unbounded_column,
        "cycles_detected": result.cycles_detected,
        "trace": [iterate_to_dict(rec) for rec in result.trace],
    }


# -- census -----------------------------------------------------------------


def census_to_dict(census: VertexCensus, instance: str = "") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "vertex_census",
        "instance": instance,
        "m": census.m,
        "n": census.n,
        "subsets_examined": census.subsets_examined,
        "singular_count": census.singular_count,
        "bases": [
            {
                "basis": list(basis.indices),
                "x": _vec(sol.x),
                "objective": format_rational(sol.objective),
                "degenerate": sol.degenerate,
            }
            for basis, sol in census.feasible_bases
        ],
        "vertices": [
            {
                "x": _vec(v.x),
                "objective": format_rational(v.objective),
                "bases": [list(b.indices) for b in v.bases],
            }
            for v in census.distinct_vertices
        ],
        "delta": format_rational(census.delta),
        "gamma": format_rational(census.gamma),
        "z_star": format_rational(census.z_star),
        "second_value": _q(census.second_value),
        "all_nondegenerate": census.all_nondegenerate,
    }


# -- verify reports ---------------------------------------------------------


def report_to_dict(report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verify_report",
        "instance": report.instance,
        "rule": report.rule.value,
        "m": report.m,
        "n": report.n,
        "status": report.status.value,
        "z": _q(report.z),
        "z_star": format_rational(report.z_star),
        "delta": format_rational(report.delta),
        "gamma": format_rational(report.gamma),
        "second_value": _q(report.second_value),
        "all_nondegenerate": report.all_nondegenerate,
        "bounds": {
            "distinct_bfs_bound": report.distinct_bfs_bound,
            "second_optimal_bound": report.second_optimal_bound,
            "tu_bound": report.tu_bound,
            "mdp_bound": report.mdp_bound,
        },
        "observed": {
            "distinct_bfs": report.observed_distinct_bfs,
            "iterations": report.observed_iterations,
        },
        "checks": [
            {
                "name": c.name,
                "pass": c.passed,
                "evaluated": c.evaluated,
                "skipped": c.skipped,
                "witnesses": jsonable(list(c.failures)),
            }
            for c in report.checks
        ],
        "overall_pass": report.overall_pass,
    }
