"""JSON formats: algebra files, map files and reports.

Scalars are written as ``[re, im]`` pairs of ``"p/q"`` strings.  Reports are
dumped with sorted keys and a fixed layout so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import Algebra, AlgebraElement, make_algebra
from .conditions import CheckOutcome, LinearMap, SolveOutcome, Witness
from .constructions import builtin
from .linalg import Matrix, SubspaceBasis
from .scalar import format_scalar, parse_scalar


class FormatError(ValueError):
    """Malformed input file; the message names the offending field."""


def _field(obj: dict, key: str, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def _scalar(obj, where: str):
    try:
        return parse_scalar(obj)
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def algebra_from_json(data: Any) -> Algebra:
    if not isinstance(data, dict):
        raise FormatError("algebra: top level must be an object")
    dim = _field(data, "dim", "algebra")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise FormatError(f"algebra.dim: expected a non-negative integer, got {dim!r}")
    entries = _field(data, "structure", "algebra")
    if not isinstance(entries, list):
        raise FormatError("algebra.structure: expected a list")
    sc = {}
    for n, e in enumerate(entries):
        where = f"algebra.structure[{n}]"
        if not isinstance(e, dict):
            raise FormatError(f"{where}: expected an object")
        idx = []
        for key in "ijk":
            v = _field(e, key, where)
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < dim:
                raise FormatError(f"{where}.{key}: index {v!r} outside 0..{dim - 1}")
            idx.append(v)
        c = _scalar(_field(e, "c", where), f"{where}.c")
        if tuple(idx) in sc:
            raise FormatError(f"{where}: duplicate entry for {tuple(idx)}")
        sc[tuple(idx)] = c
    unit = data.get("unit")
    if unit is not None:
        if not isinstance(unit, list) or len(unit) != dim:
            raise FormatError(f"algebra.unit: expected {dim} scalars")
        unit = [_scalar(u, f"algebra.unit[{i}]") for i, u in enumerate(unit)]
    labels = data.get("basis_labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise FormatError(f"algebra.basis_labels: expected {dim} names")
    return make_algebra(dim, sc, unit=unit, labels=labels, label=str(data.get("label", "")))


def algebra_to_json(alg: Algebra) -> dict:
    out = {
        "label": alg.label,
        "dim": alg.dim,
        "basis_labels": list(alg.basis_labels),
        "structure": [{"i": i, "j": j, "k": k, "c": format_scalar(c)} for i, j, k, c in alg.nonzero_structure()],
    }
    if alg.unit is not None:
        out["unit"] = [format_scalar(x) for x in alg.unit]
    return out


def load_algebra(ref: str) -> Algebra:
    """Resolve ``builtin:NAME`` (or a bare built-in name) or read a JSON file."""
    path = Path(ref)
    if ref.startswith("builtin:") or not path.exists():
        try:
            return builtin(ref)
        except KeyError as exc:
            if ref.startswith("builtin:"):
                raise
            raise FileNotFoundError(f"{ref}: no such file or built-in algebra") from exc
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{ref}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return algebra_from_json(data)


def map_from_json(data: Any, alg: Algebra | None = None) -> LinearMap:
    if not isinstance(data, dict):
        raise FormatError("map: top level must be an object")
    if alg is None:
        alg = load_algebra(str(_field(data, "algebra", "map")))
    rows = _field(data, "matrix", "map")
    d = alg.dim
    if not isinstance(rows, list) or len(rows) != d or any(not isinstance(r, list) or len(r) != d for r in rows):
        raise FormatError(f"map.matrix: expected a {d}x{d} array for algebra {alg.label or '?'}")
    return LinearMap.from_rows(alg, [[_scalar(x, f"map.matrix[{i}][{j}]") for j, x in enumerate(r)]
                                     for i, r in enumerate(rows)])


def load_map(path: str, alg: Algebra | None = None) -> LinearMap:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return map_from_json(data, alg)


def map_to_json(phi: LinearMap, algebra_ref: str) -> dict:
    return {"algebra": algebra_ref, "matrix": matrix_json(phi.matrix)}


def matrix_json(m: Matrix) -> list:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def vector_json(v) -> list:
    return [format_scalar(x) for x in v]


def element_json(a: AlgebraElement) -> list:
    return vector_json(a.coords)


def witness_json(w: Witness) -> dict:
    return {
        "args": [element_json(a) for a in w.args],
        "identity": w.identity,
        "lhs": element_json(w.lhs),
        "rhs": element_json(w.rhs),
    }


def solve_report(outcome: SolveOutcome) -> dict:
    cfg = outcome.config
    v = outcome.verification
    ver = {"trials": v.trials, "failures": v.failures, "repairs": v.repairs}
    if v.witness is not None:
        ver["witness"] = witness_json(v.witness)
    return {
        "algebra": outcome.algebra.label,
        "condition": outcome.spec.kind.value,
        "n": outcome.spec.n,
        "mode": outcome.mode,
        "complete": outcome.complete,
        "dim": outcome.dim,
        "basis": [matrix_json(m.matrix) for m in outcome.basis_maps()],
        "rounds": outcome.rounds_used,
        "constraints": outcome.constraints_used,
        "verification": ver,
        "seed": cfg.seed,
        "config": config_json(cfg),
    }


def check_report(alg: Algebra, spec, outcome: CheckOutcome, config) -> dict:
    out = {
        "algebra": alg.label,
        "condition": spec.kind.value,
        "n": spec.n,
        "verdict": outcome.verdict,
        "seed": config.seed,
        "config": config_json(config),
    }
    if outcome.witness is not None:
        out["witness"] = witness_json(outcome.witness)
    return out


def span_report(alg: Algebra, n: int, family: str, span: SubspaceBasis, config) -> dict:
    return {
        "algebra": alg.label,
        "n": n,
        "family": family,
        "dim": span.dim,
        "basis": [vector_json(v) for v in span.basis],
        "seed": config.seed,
        "config": config_json(config),
    }


def config_json(cfg) -> dict:
    return {
        "coord_bound": cfg.coord_bound,
        "batch_size": cfg.batch_size,
        "stable_rounds": cfg.stable_rounds,
        "verify_trials": cfg.verify_trials,
        "max_rounds": cfg.max_rounds,
    }


def dumps(report: Any) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
