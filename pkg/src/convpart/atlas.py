"""Closed-form small cases: partitions of the line and two-region partitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .arrangement import Arrangement, Partition, Verdict, carries, project_pi
from .exactgeom import GeometryError, HomogeneousCone, HVector, is_zero, primitive, unit


@dataclass(frozen=True)
class D1Type:
    """Occupied labels of a partition of R^1, listed from left to right."""

    occupied: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.occupied)

    @property
    def cell_dim(self) -> int:
        return self.k - 1


def enum_d1_types(n: int) -> tuple[dict[int, int], list[D1Type]]:
    if not 1 <= n <= 8:
        raise ValueError("enum_d1_types supports 1 <= n <= 8")
    types = [D1Type(p) for k in range(1, n + 1) for p in permutations(range(1, n + 1), k)]
    counts: dict[int, int] = {}
    for t in types:
        counts[t.cell_dim] = counts.get(t.cell_dim, 0) + 1
    return counts, types


def enum_d1_json(n: int) -> dict:
    counts, types = enum_d1_types(n)
    return {
        "n": n,
        "counts": {str(k): v for k, v in sorted(counts.items())},
        "types": [[str(x) for x in t.occupied] for t in types],
    }


def d1_arrangement(order: Sequence[int], cuts: Sequence, n: int) -> Arrangement:
    """Carrying arrangement for the given left-to-right order (n >= 2).

    The normal for positions p < q is (-cut_p, 1), so the left label wins
    left of the cut. Unoccupied labels lose against everybody via +-e_0.
    """
    order, cuts = _check_d1(order, cuts, n)
    if n < 2:
        raise GeometryError("an arrangement needs n >= 2")
    pos = {lab: p for p, lab in enumerate(order)}
    normals: dict[tuple[int, int], HVector] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i not in pos:
                normals[(i, j)] = (Fraction(1), Fraction(0))
            elif j not in pos:
                normals[(i, j)] = (Fraction(-1), Fraction(0))
            else:
                p, q = pos[i], pos[j]
                cut = cuts[min(p, q)]
                c = (-cut, Fraction(1))
                normals[(i, j)] = c if p < q else (cut, Fraction(-1))
    return Arrangement(n, 1, normals)


def _check_d1(order: Sequence[int], cuts: Sequence, n: int) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    order = tuple(int(x) for x in order)
    cuts = tuple(Fraction(c) for c in cuts)
    if not order or len(set(order)) != len(order) or any(not 1 <= x <= n for x in order):
        raise GeometryError("order must list distinct labels from 1..n")
    if len(cuts) != len(order) - 1:
        raise GeometryError("need exactly k - 1 cuts")
    if any(a >= b for a, b in zip(cuts, cuts[1:])):
        raise GeometryError("cuts must be strictly increasing")
    return order, cuts


def d1_partition(order: Sequence[int], cuts: Sequence, n: int | None = None) -> Partition:
    n = n if n is not None else max(order)
    order, cuts = _check_d1(order, cuts, n)
    if n >= 2:
        return project_pi(d1_arrangement(order, cuts, n))
    return Partition(1, 1, (HomogeneousCone.upper(2),))


def merge_adjacent(order: Sequence[int], cuts: Sequence, p: int) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    """Drop the region at position p (0 < p < k-1) by collapsing its two cuts."""
    order, cuts = tuple(order), tuple(Fraction(c) for c in cuts)
    if not 0 < p < len(order) - 1:
        raise ValueError("only interior regions can be collapsed")
    mid = (cuts[p - 1] + cuts[p]) / 2
    return order[:p] + order[p + 1:], cuts[: p - 1] + (mid,) + cuts[p + 1:]


def two_partition_roundtrip(c: Sequence, d: int) -> dict:
    """Classify c_12 and compare with the carry test.

    c_12 a positive multiple of e_0 leaves P_1 empty, a negative multiple
    leaves P_2 empty, anything else gives a proper 2-partition.
    """
    c = tuple(Fraction(x) for x in c)
    if len(c) != d + 1 or is_zero(c):
        raise GeometryError("c must be a nonzero vector of length d + 1")
    key = primitive(c)
    if key == unit(d + 1, 0):
        kind, empty = "pole", 1
    elif key == tuple(-x for x in unit(d + 1, 0)):
        kind, empty = "pole", 2
    else:
        kind, empty = "proper", None
    A = Arrangement(2, d, {(1, 2): c})
    verdict = carries(A).verdict
    P = project_pi(A)
    empties = [i for i in (1, 2) if P.region(i).empty]
    expected = Verdict.CARRIES_PROPER if empty is None else Verdict.CARRIES_NONPROPER
    return {
        "classification": kind if empty is None else f"pole (P_{empty} empty)",
        "empty_label": empty,
        "carries": verdict.value,
        "agree": verdict is expected and empties == ([] if empty is None else [empty]),
    }
