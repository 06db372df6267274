"""Index sets, the face poset of a partition and derived predicates.

A face is keyed by its index set, a frozenset over ``{1..n} | {INF}``. The
cone of the face with index ``I`` is the intersection of the region cones
``C_i`` for ``i`` in ``I`` (``C_INF`` being the lower halfspace). Spherical
dimensions are cone dimensions minus one, so the empty face has dim -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import CapExceeded, Partition, enumeration_cap
from .exactgeom import (
    HomogeneousCone,
    HVector,
    cone_contains,
    cone_equal,
    dot,
    is_zero,
    line_key,
    neg,
    relints_meet,
    solve_strict,
    unit,
)

INF = math.inf
FaceIndex = frozenset


def sorted_index(index: Iterable) -> list:
    return sorted(index)


def index_str(index: Iterable, n: int | None = None) -> str:
    """Canonical string, e.g. ``"134i"``; labels are comma separated when n >= 10."""
    parts = ["i" if x == INF else str(x) for x in sorted_index(index)]
    if n is not None and n >= 10:
        return ",".join(parts)
    return "".join(parts)


def parse_index(text: str, n: int | None = None) -> frozenset:
    text = text.strip()
    if "," in text or (n is not None and n >= 10):
        items = [t for t in text.split(",") if t]
    else:
        items = list(text)
    out = set()
    for t in items:
        out.add(INF if t in ("i", "inf", "∞") else int(t))
    return frozenset(out)


def index_sort_key(index: Iterable) -> tuple:
    return tuple(sorted_index(index))


# ---------------------------------------------------------------------------
# cones and index sets


def region_cone(P: Partition, i) -> HomogeneousCone:
    if i == INF:
        return HomogeneousCone.lower(P.dim)
    return P.region(i)


def face_cone(P: Partition, index: Iterable) -> HomogeneousCone:
    cones = [region_cone(P, i) for i in sorted_index(index)]
    if not cones:
        return HomogeneousCone.whole(P.dim)
    return cones[0].intersect(*cones[1:])


def minimal_index(P: Partition) -> frozenset:
    return frozenset(P.nonempty_labels()) | {INF}


def index_set(P: Partition, x: Sequence[Fraction]) -> frozenset:
    """Labels of the closed cones containing x (plus INF when x_0 <= 0)."""
    if is_zero(x):
        return minimal_index(P)
    out = {i for i in P.nonempty_labels() if P.region(i).contains(x)}
    if x[0] <= 0:
        out.add(INF)
    return frozenset(out)


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True)
class Face:
    index: frozenset
    cone: HomogeneousCone = field(compare=False, repr=False)
    dim: int
    half_linear: bool
    linear: bool
    at_infinity: bool
    bounded: bool

    def key(self, n: int | None = None) -> str:
        return index_str(self.index, n)


def make_face(P: Partition, index: frozenset) -> Face:
    cone = face_cone(P, index)
    cdim = cone.dim
    lin = cone.lineality_dim
    linear = cdim == lin
    half_linear = (not linear) and lin == cdim - 1
    at_inf = cone.with_equalities(unit(P.dim, 0))
    bounded = at_inf.dim <= 0
    return Face(index, cone, cdim - 1, half_linear, linear, INF in index, bounded)


@dataclass
class FacePoset:
    n: int
    d: int
    faces: dict[frozenset, Face]
    covers: dict[frozenset, list[frozenset]]  # face -> faces directly below it
    minimal_face: frozenset

    def sorted_indices(self) -> list[frozenset]:
        return sorted(self.faces, key=lambda I: index_str(I, self.n))

    def below(self, upper: frozenset) -> list[frozenset]:
        """All faces strictly below ``upper`` (in its closure)."""
        return [J for J in self.faces if J != upper and J >= upper]

    def by_dim(self, k: int) -> list[frozenset]:
        return [I for I in self.sorted_indices() if self.faces[I].dim == k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** f.dim for f in self.faces.values() if f.dim >= 0)

    def to_json(self) -> dict:
        faces = {}
        for I in self.sorted_indices():
            f = self.faces[I]
            faces[index_str(I, self.n)] = {
                "dim": f.dim,
                "half_linear": f.half_linear,
                "at_infinity": f.at_infinity,
                "bounded": f.bounded,
                "covers": sorted(index_str(J, self.n) for J in self.covers[I]),
            }
        return {
            "n": self.n,
            "d": self.d,
            "minimal_face": index_str(self.minimal_face, self.n),
            "faces": faces,
        }


def arrangement_hyperplanes(P: Partition) -> list[HVector]:
    """Distinct hyperplanes of all nonempty region cones, plus e_0."""
    seen: dict[HVector, None] = {}
    for i in P.nonempty_labels():
        c = P.region(i)
        for a in c.inequalities + c.equalities:
            if not is_zero(a):
                seen.setdefault(line_key(a), None)
    seen.setdefault(line_key(unit(P.dim, 0)), None)
    return list(seen)


def covector_points(hyperplanes: Sequence[HVector], dim: int) -> list[HVector]:
    """One relative-interior point per nonzero covector cell of the arrangement."""
    cap = enumeration_cap()
    if len(hyperplanes) > cap + 1:
        raise CapExceeded(f"{len(hyperplanes)} hyperplanes exceed the enumeration cap {cap}")
    out: list[HVector] = []

    def dfs(k: int, strict: list[HVector], eq: list[HVector], w: HVector | None) -> None:
        # w is a witness of the current cell when strict is nonempty
        if k == len(hyperplanes):
            if strict:
                out.append(w)
            return
        h = hyperplanes[k]
        for sign in (0, -1, 1):
            if sign == 0:
                s2, e2 = strict, eq + [h]
            else:
                s2, e2 = strict + [h if sign < 0 else neg(h)], eq
            if not s2:
                dfs(k + 1, s2, e2, None)
                continue
            if w is not None and strict and _sign(dot(h, w)) == sign:
                dfs(k + 1, s2, e2, w)
                continue
            w2 = solve_strict(s2, (), e2, dim)
            if w2 is not None:
                dfs(k + 1, s2, e2, w2)

    dfs(0, [], [], None)
    return out


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def enumerate_faces(P: Partition) -> FacePoset:
    pts = covector_points(arrangement_hyperplanes(P), P.dim)
    indices = {index_set(P, x) for x in pts}
    indices.add(minimal_index(P))
    indices.discard(frozenset({INF}))
    faces = {I: make_face(P, I) for I in indices}
    # order by exact cone containment, prefiltered by reverse index inclusion
    below: dict[frozenset, set[frozenset]] = {I: set() for I in faces}
    for I in faces:
        for J in faces:
            if J != I and J > I and cone_contains(faces[I].cone, faces[J].cone):
                below[I].add(J)
    covers = {}
    for I in faces:
        direct = [J for J in below[I] if not any(J in below[K] for K in below[I])]
        covers[I] = sorted(direct, key=index_sort_key)
    return FacePoset(P.n, P.d, faces, covers, minimal_index(P))


# ---------------------------------------------------------------------------
# predicates


def is_essential(P: Partition, poset: FacePoset | None = None) -> bool:
    cone = face_cone(P, minimal_index(P))
    return cone.dim == 0


def is_pointed(P: Partition) -> bool:
    return P.proper and all(c.lineality_dim == 0 for c in P.regions)


def half_linear_faces(P: Partition, poset: FacePoset | None = None) -> set[frozenset]:
    poset = poset or enumerate_faces(P)
    return {I for I, f in poset.faces.items() if f.half_linear}


def linear_faces(poset: FacePoset) -> set[frozenset]:
    return {I for I, f in poset.faces.items() if f.linear}


def subfaces(P: Partition, index: Iterable) -> list[HomogeneousCone]:
    """Proper faces of the polyhedral cone C_I, sorted by dimension."""
    cone = face_cone(P, frozenset(index))
    if cone.empty or cone.dim == 0:
        return []
    return cone_faces(cone)


def cone_faces(cone: HomogeneousCone) -> list[HomogeneousCone]:
    facets = [cone.inequalities[i] for i in cone.facet_indices]
    base_eq = cone.affine_equalities
    seen: dict[frozenset, HomogeneousCone] = {}
    for r in range(1, len(facets) + 1):
        for subset in combinations(range(len(facets)), r):
            face = HomogeneousCone(tuple(facets), base_eq + tuple(facets[i] for i in subset), cone.ambient_dim)
            tight = frozenset(i for i, a in enumerate(facets) if face.with_equalities(a).dim == face.dim)
            if tight not in seen:
                seen[tight] = HomogeneousCone(tuple(facets), base_eq + tuple(facets[i] for i in sorted(tight)), cone.ambient_dim)
    out = list(seen.values())
    out.sort(key=lambda c: (c.dim, [tuple(a) for a in c.equalities]))
    return out


def faces_in(poset: FacePoset, cone: HomogeneousCone) -> list[frozenset]:
    return [I for I, f in poset.faces.items() if f.dim >= 0 and cone_contains(cone, f.cone)]


def is_union_of_faces(poset: FacePoset, cone: HomogeneousCone) -> bool:
    """Every face whose relative interior meets ``cone`` lies inside it."""
    for f in poset.faces.values():
        if f.dim < 0:
            continue
        if relints_meet(f.cone, cone) and not cone_contains(cone, f.cone):
            return False
    return True


def pi_angles(P: Partition, poset: FacePoset | None = None) -> list[tuple[frozenset, frozenset]]:
    poset = poset or enumerate_faces(P)
    d = P.d
    walls = [I for I, f in poset.faces.items() if f.dim == d - 1]
    found: set[tuple[frozenset, frozenset]] = set()
    for i in P.nonempty_labels():
        for sub in subfaces(P, {i}):
            if sub.dim != d:
                continue
            inside = [I for I in walls if i in I and cone_contains(sub, poset.faces[I].cone)]
            for a, b in combinations(sorted(inside, key=index_sort_key), 2):
                meet = poset.faces[a].cone.intersect(poset.faces[b].cone)
                if meet.dim == d - 1:
                    found.add((a, b))
    return sorted(found, key=lambda p: (index_sort_key(p[0]), index_sort_key(p[1])))


def adjacency_graph(P: Partition) -> set[tuple[int, int]]:
    out = set()
    labels = P.nonempty_labels()
    for i, j in combinations(labels, 2):
        if P.region(i).intersect(P.region(j)).dim == P.d:
            out.add((i, j))
    return out
