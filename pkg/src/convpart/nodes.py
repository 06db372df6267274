"""Node systems, the refined complex P_N, node frames and combinatorial types.

Node ids are combinatorial so that frames correspond across partitions of
the same type: the node of a half-linear face with index ``I`` is
``"v" + index_str(I)`` and the extra nodes on a non-essential minimal face
are ``"m1", ..., "m{k+2}"``. A cell of P_N is keyed by its sorted node ids.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .arrangement import Partition
from .exactgeom import (
    HomogeneousCone,
    HVector,
    add,
    cone_equal,
    cone_hrep,
    det_sign,
    neg,
    nullspace,
    positively_spans,
    primitive,
    rank,
    scale,
)
from .faces import (
    FacePoset,
    enumerate_faces,
    face_cone,
    index_sort_key,
    index_str,
    is_essential,
)


class ConsistencyError(AssertionError):
    """An internal invariant failed; this indicates a bug, not bad input."""


class InvalidNodeSystem(ValueError):
    pass


# ---------------------------------------------------------------------------
# node systems


@dataclass
class NodeSystem:
    n: int
    face_nodes: dict[frozenset, HVector]
    minimal_nodes: list[HVector]
    minimal_index: frozenset

    def node_id(self, index: frozenset) -> str:
        return "v" + index_str(index, self.n)

    def vectors(self) -> dict[str, HVector]:
        out = {}
        for I in sorted(self.face_nodes, key=index_sort_key):
            out[self.node_id(I)] = self.face_nodes[I]
        for k, v in enumerate(self.minimal_nodes, start=1):
            out[f"m{k}"] = v
        return out

    def node_faces(self) -> dict[str, frozenset]:
        out = {self.node_id(I): I for I in self.face_nodes}
        for k in range(len(self.minimal_nodes)):
            out[f"m{k + 1}"] = self.minimal_index
        return out

    def ids(self) -> list[str]:
        return list(self.vectors())

    def with_vectors(self, vectors: Mapping[str, HVector]) -> NodeSystem:
        faces = {I: vectors[self.node_id(I)] for I in self.face_nodes}
        mins = [vectors[f"m{k + 1}"] for k in range(len(self.minimal_nodes))]
        return NodeSystem(self.n, faces, mins, self.minimal_index)

    def without(self, index: frozenset) -> NodeSystem:
        faces = {I: v for I, v in self.face_nodes.items() if I != index}
        return NodeSystem(self.n, faces, list(self.minimal_nodes), self.minimal_index)

    def to_json(self) -> dict:
        return {k: [str(x) for x in v] for k, v in self.vectors().items()}


def _random_relint(cone: HomogeneousCone, rng: random.Random) -> HVector:
    p = cone.relint_point
    hull = nullspace(cone.affine_equalities, cone.ambient_dim) if cone.affine_equalities else None
    basis = hull if hull is not None else [tuple(Fraction(int(i == k)) for i in range(cone.ambient_dim)) for k in range(cone.ambient_dim)]
    q = tuple(Fraction(0) for _ in p)
    for b in basis:
        q = add(q, scale(b, Fraction(rng.randint(-8, 8))))
    t = Fraction(1)
    for _ in range(64):
        cand = add(p, scale(q, t))
        if cone.contains_in_relint(cand):
            return primitive(cand)
        t /= 2
    return p


def default_node_system(
    P: Partition,
    poset: FacePoset | None = None,
    seed: int | None = None,
    swap_minimal: bool = False,
) -> NodeSystem:
    """Relint points of the half-linear faces, plus k+2 spanning minimal nodes.

    Without a seed the output is deterministic; a seed draws other relative
    interior points and another basis of the minimal face.
    """
    poset = poset or enumerate_faces(P)
    rng = random.Random(seed) if seed is not None else None
    face_nodes = {}
    for I in sorted(poset.faces, key=index_sort_key):
        f = poset.faces[I]
        if f.half_linear:
            face_nodes[I] = _random_relint(f.cone, rng) if rng else f.cone.relint_point
    mins: list[HVector] = []
    if not is_essential(P):
        mcone = poset.faces[poset.minimal_face].cone
        basis = nullspace(mcone.affine_equalities, P.dim)
        if rng:
            while True:
                mixed = [primitive(tuple(sum((Fraction(rng.randint(-3, 3)) * b[k] for b in basis), Fraction(0)) for k in range(P.dim))) for _ in basis]
                if rank(mixed) == len(basis):
                    basis = mixed
                    break
        total = tuple(Fraction(0) for _ in range(P.dim))
        for b in basis:
            total = add(total, b)
        mins = list(basis) + [neg(total)]
        if swap_minimal:
            mins[0], mins[1] = mins[1], mins[0]
        if not positively_spans(mins, mcone):
            raise ConsistencyError("minimal nodes do not positively span the minimal face")
    return NodeSystem(P.n, face_nodes, mins, poset.minimal_face)


def node_system_dim(P: Partition, poset: FacePoset | None = None) -> int:
    poset = poset or enumerate_faces(P)
    total = sum(f.dim for f in poset.faces.values() if f.half_linear)
    if not is_essential(P):
        k = poset.faces[poset.minimal_face].dim
        total += k * (k + 2)
    return total


def validate_node_system(P: Partition, N: NodeSystem, poset: FacePoset) -> None:
    hl = {I for I, f in poset.faces.items() if f.half_linear}
    if set(N.face_nodes) != hl:
        raise InvalidNodeSystem("node system must have exactly one node per half-linear face")
    for I, v in N.face_nodes.items():
        if not poset.faces[I].cone.contains_in_relint(v):
            raise InvalidNodeSystem(f"node {N.node_id(I)} is not in the relative interior of its face")
    if not is_essential(P):
        k = poset.faces[poset.minimal_face].dim
        if len(N.minimal_nodes) != k + 2 or not positively_spans(N.minimal_nodes, poset.faces[poset.minimal_face].cone):
            raise InvalidNodeSystem("minimal nodes must be k+2 points positively spanning the minimal face")
    elif N.minimal_nodes:
        raise InvalidNodeSystem("an essential partition has no minimal nodes")


def hull_failures(P: Partition, N: NodeSystem, poset: FacePoset | None = None) -> list[frozenset]:
    """Faces that are not the conic hull of the nodes they contain."""
    poset = poset or enumerate_faces(P)
    vecs = list(N.vectors().values())
    bad = []
    for I in poset.sorted_indices():
        f = poset.faces[I]
        if f.dim < 0:
            continue
        inside = [v for v in vecs if f.cone.contains(v)]
        hull = cone_hrep(inside, P.dim)
        if not cone_equal(hull, f.cone):
            bad.append(I)
    return bad


def hull_check(P: Partition, N: NodeSystem, poset: FacePoset | None = None) -> bool:
    return not hull_failures(P, N, poset)


# ---------------------------------------------------------------------------
# the complex P_N


@dataclass(frozen=True)
class Cell:
    nodes: frozenset[str]
    dim: int
    parent: frozenset
    kind: str  # "minimal-simplex", "pyramid" or "plain"

    @property
    def key(self) -> str:
        return cell_key(self.nodes)


def cell_key(nodes: Iterable[str]) -> str:
    items = sorted(nodes)
    return "+".join(items) if items else "()"


@dataclass
class PNComplex:
    d: int
    cells: dict[str, Cell]
    covers: dict[str, list[str]]  # cell -> cells directly below it
    vectors: dict[str, HVector] = field(repr=False)

    def by_dim(self, k: int) -> list[Cell]:
        return sorted((c for c in self.cells.values() if c.dim == k), key=lambda c: c.key)

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells.values() if c.dim >= 0)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cells.values():
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self, n: int | None = None) -> dict:
        return {
            "cells": [
                {
                    "key": c.key,
                    "dim": c.dim,
                    "kind": c.kind,
                    "parent_face": index_str(c.parent, n),
                    "covers": sorted(self.covers[c.key]),
                }
                for c in sorted(self.cells.values(), key=lambda c: (c.dim, c.key))
            ],
            "euler_characteristic": self.euler_characteristic(),
        }


def build_PN(P: Partition, N: NodeSystem, poset: FacePoset | None = None, validate: bool = True) -> PNComplex:
    poset = poset or enumerate_faces(P)
    if validate:
        validate_node_system(P, N, poset)
    vecs = N.vectors()
    cells: dict[str, Cell] = {}

    def put(nodes: frozenset, dim: int, parent: frozenset, kind: str) -> None:
        key = cell_key(nodes)
        if key not in cells:
            cells[key] = Cell(nodes, dim, parent, kind)

    mins = [f"m{k + 1}" for k in range(len(N.minimal_nodes))]
    kmin = poset.faces[poset.minimal_face].dim
    top = kmin + 1 if mins else 0
    for r in range(0, top + 1):
        for S in combinations(mins, r):
            put(frozenset(S), r - 1, poset.minimal_face, "minimal-simplex")

    order = sorted((I for I, f in poset.faces.items() if f.dim >= 0), key=lambda I: (poset.faces[I].dim, index_sort_key(I)))
    for I in order:
        f = poset.faces[I]
        if f.linear:
            continue
        if f.half_linear:
            apex = N.node_id(I)
            below = [c for c in list(cells.values()) if c.parent != I and c.parent >= I and poset.faces[c.parent].cone is not None]
            for c in sorted(below, key=lambda c: (c.dim, c.key)):
                put(c.nodes | {apex}, c.dim + 1, I, "pyramid")
        else:
            inside = frozenset(k for k, v in vecs.items() if f.cone.contains(v))
            put(inside, f.dim, I, "plain")

    keys = sorted(cells)
    below_sets = {k: {j for j in keys if j != k and cells[j].nodes < cells[k].nodes} for k in keys}
    covers = {}
    for k in keys:
        covers[k] = sorted(j for j in below_sets[k] if not any(j in below_sets[m] for m in below_sets[k]))
    return PNComplex(P.d, cells, covers, vecs)


# ---------------------------------------------------------------------------
# frames and orientation


@dataclass(frozen=True)
class NodeFrame:
    flag: tuple[str, ...]  # cell keys G_0 < ... < G_d
    nodes: tuple[str, ...]

    @property
    def key(self) -> str:
        return " < ".join(self.flag) + " :: " + ",".join(self.nodes)


def complete_flags(PN: PNComplex) -> list[tuple[str, ...]]:
    ups: dict[str, list[str]] = {k: [] for k in PN.cells}
    for k, lows in PN.covers.items():
        for j in lows:
            ups[j].append(k)
    flags: list[tuple[str, ...]] = []

    def extend(chain: list[str]) -> None:
        last = PN.cells[chain[-1]]
        if last.dim == PN.d:
            flags.append(tuple(chain))
            return
        for k in sorted(ups[chain[-1]]):
            if PN.cells[k].dim == last.dim + 1:
                extend(chain + [k])

    for c in PN.by_dim(0):
        extend([c.key])
    return flags


def enumerate_frames(PN: PNComplex) -> list[NodeFrame]:
    out = []
    for flag in complete_flags(PN):
        sets = [sorted(PN.cells[k].nodes) for k in flag]

        def pick(level: int, chosen: list[str]) -> None:
            if level == len(flag):
                out.append(NodeFrame(flag, tuple(chosen)))
                return
            for v in sets[level]:
                if v not in chosen:
                    pick(level + 1, chosen + [v])

        pick(0, [])
    return out


@dataclass
class Orientation:
    frame_signs: dict[str, int]
    flag_signs: dict[str, int]

    def bases(self) -> list[str]:
        return [k for k, s in self.frame_signs.items() if s != 0]

    def flats(self) -> list[str]:
        return [k for k, s in self.frame_signs.items() if s == 0]


def frame_signs(frames: Iterable[NodeFrame], vectors: Mapping[str, HVector]) -> dict[str, int]:
    return {fr.key: det_sign([vectors[v] for v in fr.nodes]) for fr in frames}


def orientation_of(PN: PNComplex, vectors: Mapping[str, HVector] | None = None, frames: list[NodeFrame] | None = None) -> Orientation:
    vectors = vectors if vectors is not None else PN.vectors
    frames = frames if frames is not None else enumerate_frames(PN)
    signs = frame_signs(frames, vectors)
    flag_signs: dict[str, int] = {}
    for fr in frames:
        s = signs[fr.key]
        if s == 0:
            continue
        fk = " < ".join(fr.flag)
        prev = flag_signs.setdefault(fk, s)
        if prev != s:
            raise ConsistencyError(f"flag {fk} carries frames of both signs")
    return Orientation(signs, flag_signs)


def orientation(P: Partition, N: NodeSystem, poset: FacePoset | None = None) -> Orientation:
    return orientation_of(build_PN(P, N, poset))


# ---------------------------------------------------------------------------
# combinatorial type


@dataclass
class CombType:
    n: int
    d: int
    index_family: list[str]
    half_linear: list[str]
    essential: bool
    orientation: dict[str, int]
    alt_orientation: dict[str, int] | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "index_family": self.index_family,
            "half_linear": self.half_linear,
            "essential": self.essential,
            "orientation": dict(sorted(self.orientation.items())),
        }
        if self.alt_orientation is not None:
            out["alt_orientation"] = dict(sorted(self.alt_orientation.items()))
            out["note"] = "non-essential: the two global orientation choices are both recorded; equivalence matches either"
        out["hash"] = self.digest()
        return out

    def digest(self) -> str:
        body = {
            "n": self.n,
            "d": self.d,
            "index_family": self.index_family,
            "half_linear": self.half_linear,
            "orientations": sorted(
                json.dumps(o, sort_keys=True) for o in (self.orientation, self.alt_orientation) if o is not None
            ),
        }
        return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()


def comb_type(P: Partition, poset: FacePoset | None = None, seed: int | None = None) -> CombType:
    poset = poset or enumerate_faces(P)
    N = default_node_system(P, poset, seed=seed)
    PN = build_PN(P, N, poset)
    frames = enumerate_frames(PN)
    ori = orientation_of(PN, frames=frames)
    alt = None
    essential = is_essential(P)
    if not essential:
        N2 = default_node_system(P, poset, seed=seed, swap_minimal=True)
        alt = orientation_of(PN, N2.vectors(), frames).frame_signs
    return CombType(
        P.n,
        P.d,
        sorted(index_str(I, P.n) for I in poset.faces),
        sorted(index_str(I, P.n) for I, f in poset.faces.items() if f.half_linear),
        essential,
        ori.frame_signs,
        alt,
    )


def types_equivalent(a: CombType, b: CombType) -> bool:
    if (a.n, a.d) != (b.n, b.d):
        return False
    if a.index_family != b.index_family or a.half_linear != b.half_linear:
        return False
    candidates = [a.orientation] + ([a.alt_orientation] if a.alt_orientation is not None else [])
    return any(o == b.orientation for o in candidates)


def comb_equiv(P: Partition, Q: Partition) -> bool:
    if (P.n, P.d) != (Q.n, Q.d):
        return False
    return types_equivalent(comb_type(P), comb_type(Q))


def face_cone_of(P: Partition, index) -> HomogeneousCone:
    return face_cone(P, index)
