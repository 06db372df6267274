"""JSON (de)serialization of arrangements, node assignments and rationals."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .arrangement import Arrangement, Partition
from .exactgeom import GeometryError, HomogeneousCone, HVector, format_rational, hvec


def vector_to_json(v: HVector) -> list[str]:
    return [format_rational(x) for x in v]


def vector_from_json(items) -> HVector:
    if not isinstance(items, list):
        raise GeometryError(f"expected a list of rationals, got {items!r}")
    return hvec(*items)


def arrangement_to_json(A: Arrangement) -> dict[str, Any]:
    return {
        "d": A.d,
        "n": A.n,
        "normals": {f"{i},{j}": vector_to_json(c) for (i, j), c in A.normals.items()},
    }


def arrangement_from_json(data: Mapping[str, Any]) -> Arrangement:
    try:
        n, d = int(data["n"]), int(data["d"])
        raw = data["normals"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryError(f"malformed arrangement document: {exc}") from exc
    normals = {}
    for key, value in raw.items():
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError as exc:
            raise GeometryError(f"bad pair key {key!r}") from exc
        if not i < j:
            raise GeometryError(f"pair key {key!r} must satisfy i < j")
        normals[(i, j)] = vector_from_json(value)
    return Arrangement(n, d, normals)


def load_arrangement(path: str | Path) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return arrangement_from_json(json.load(fh))


def partition_to_json(P: Partition) -> dict[str, Any]:
    """Region cones in H-form; an empty region is written as null."""
    regions = []
    for C in P.regions:
        if C.empty:
            regions.append(None)
        else:
            regions.append({
                "inequalities": [vector_to_json(a) for a in C.inequalities],
                "equalities": [vector_to_json(b) for b in C.equalities],
            })
    return {"n": P.n, "d": P.d, "regions": regions}


def partition_from_json(data: Mapping[str, Any]) -> Partition:
    try:
        n, d = int(data["n"]), int(data["d"])
        raw = data["regions"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryError(f"malformed partition document: {exc}") from exc
    regions = []
    for item in raw:
        if item is None:
            regions.append(HomogeneousCone.empty_set(d + 1))
            continue
        ineq = tuple(vector_from_json(a) for a in item.get("inequalities", []))
        eq = tuple(vector_from_json(b) for b in item.get("equalities", []))
        regions.append(HomogeneousCone(ineq, eq, d + 1))
    return Partition(n, d, tuple(regions))


def assignment_from_json(data: Mapping[str, Any]) -> dict[str, HVector]:
    return {str(k): vector_from_json(v) for k, v in data.items()}


def assignment_to_json(X: Mapping[str, HVector]) -> dict[str, list[str]]:
    return {k: vector_to_json(v) for k, v in sorted(X.items())}


def load_assignment(path: str | Path) -> dict[str, HVector]:
    with open(path, encoding="utf-8") as fh:
        return assignment_from_json(json.load(fh))


def dumps(obj: Any) -> str:
    """Canonical JSON text used by every command (sorted keys, 2-space indent)."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
