"""Realization constraints for a combinatorial type, and cone-partition checks.

Given a partition P with node system N, an assignment X sends every node id
to a candidate vector x_v. The checks are:

(i)   x_v nonzero (assignments are projective, so unit length is not imposed)
(ii)  node bases keep their reference determinant sign
(iii) flats stay flat (determinant zero)
(iv)  nodes at infinity keep x_0 = 0
(v)   other nodes keep x_0 > 0

plus a generic vector g lying in the interior of exactly one cone spanned by
the assigned nodes of a top-dimensional cell of P_N.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .arrangement import ContractViolation, Partition
from .exactgeom import (
    GeometryError,
    HomogeneousCone,
    HVector,
    add,
    cone_equal,
    cone_facets as _cone_facets,
    cone_hrep,
    cone_rays,
    det_sign,
    dot,
    is_zero,
    neg,
    nullspace,
    primitive,
    projective_key,
    rank,
    unit,
)
from .faces import FacePoset, enumerate_faces, index_str
from .nodes import (
    ConsistencyError,
    NodeFrame,
    NodeSystem,
    PNComplex,
    build_PN,
    comb_equiv,
    complete_flags,
    default_node_system,
    enumerate_frames,
    frame_signs,
)

G_BOUND = 1 << 20
DEFAULT_TRIALS = 256

NodeAssignment = dict[str, HVector]


# ---------------------------------------------------------------------------
# shared preprocessing


@dataclass
class RealizationContext:
    """Everything about (P, N) that does not depend on the assignment."""

    P: Partition
    N: NodeSystem
    poset: FacePoset
    PN: PNComplex
    frames: list[NodeFrame]
    reference: dict[str, int]
    at_infinity: dict[str, bool]
    top_cells: list[str]

    @property
    def node_ids(self) -> list[str]:
        return list(self.N.vectors())


def prepare(P: Partition, N: NodeSystem | None = None, poset: FacePoset | None = None) -> RealizationContext:
    poset = poset or enumerate_faces(P)
    N = N or default_node_system(P, poset)
    PN = build_PN(P, N, poset)
    frames = enumerate_frames(PN)
    vecs = N.vectors()
    reference = frame_signs(frames, vecs)
    at_inf = {k: v[0] == 0 for k, v in vecs.items()}
    top = [c.key for c in PN.by_dim(P.d)]
    return RealizationContext(P, N, poset, PN, frames, reference, at_inf, top)


# ---------------------------------------------------------------------------
# constraint check


@dataclass
class ConstraintReport:
    nonzero: bool
    basis_sign: bool
    flat: bool
    at_infinity: bool
    interior: bool
    generic_g: HVector | None
    cones_containing_g: int | None
    g_trials: int
    verdict: str
    witnesses: dict = field(default_factory=dict)

    @property
    def conditions_pass(self) -> bool:
        return self.nonzero and self.basis_sign and self.flat and self.at_infinity and self.interior

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "conditions": {
                "i_nonzero": self.nonzero,
                "ii_basis_sign": self.basis_sign,
                "iii_flat": self.flat,
                "iv_at_infinity": self.at_infinity,
                "v_interior": self.interior,
            },
            "generic_g": None if self.generic_g is None else [str(x) for x in self.generic_g],
            "cones_containing_g": self.cones_containing_g,
            "g_trials": self.g_trials,
            "witnesses": self.witnesses,
        }


def _cell_cones(ctx: RealizationContext, X: Mapping[str, HVector]) -> list[tuple[str, list[HVector], HomogeneousCone]]:
    out = []
    for key in ctx.top_cells:
        gens = [X[v] for v in sorted(ctx.PN.cells[key].nodes)]
        out.append((key, gens, cone_hrep(gens, ctx.P.dim)))
    return out


def _spanned_hyperplanes(gen_lists: Sequence[Sequence[HVector]], d: int) -> set[HVector]:
    """Normals of hyperplanes spanned by d vectors taken from one list."""
    out: set[HVector] = set()
    for gens in gen_lists:
        for sub in combinations(gens, d):
            if rank(list(sub)) == d:
                ns = nullspace(list(sub), d + 1)
                out.add(primitive(ns[0]))
    return out


def _in_interior(cone: HomogeneousCone, g: HVector) -> bool:
    if cone.equalities:
        return False
    return all(dot(a, g) < 0 for a in cone.inequalities)


def _random_g(rng: random.Random, dim: int) -> HVector:
    return (Fraction(rng.randint(1, G_BOUND)),) + tuple(Fraction(rng.randint(-G_BOUND, G_BOUND)) for _ in range(dim - 1))


def search_g(
    cones: Sequence[HomogeneousCone],
    hyperplanes: set[HVector],
    dim: int,
    seed: int,
    trials: int,
    ambient: HomogeneousCone | None = None,
) -> tuple[HVector | None, int | None, int]:
    """Seeded search for a generic g in exactly one cone interior.

    Returns (g, count, trials used). On success g is the first generic trial
    with count 1; otherwise g is the first generic trial seen (count != 1),
    or None when no trial was generic.
    """
    rng = random.Random(seed)
    first: tuple[HVector, int] | None = None
    for t in range(1, trials + 1):
        g = _random_g(rng, dim)
        if ambient is not None and not ambient.contains_in_relint(g):
            continue
        if any(dot(h, g) == 0 for h in hyperplanes):
            continue
        count = sum(1 for c in cones if _in_interior(c, g))
        if count == 1:
            return g, 1, t
        if first is None:
            first = (g, count)
    if first is None:
        return None, None, trials
    return first[0], first[1], trials


def check_constraints(
    P: Partition,
    N: NodeSystem | None,
    X: Mapping[str, HVector],
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    ctx: RealizationContext | None = None,
) -> ConstraintReport:
    ctx = ctx or prepare(P, N)
    missing = [v for v in ctx.node_ids if v not in X]
    if missing:
        raise GeometryError(f"assignment lacks vectors for nodes {missing}")
    X = {v: tuple(Fraction(t) for t in X[v]) for v in ctx.node_ids}
    for v, x in X.items():
        if len(x) != ctx.P.dim:
            raise GeometryError(f"vector for {v} has the wrong length")
    wit: dict = {}
    zero = [v for v, x in X.items() if is_zero(x)]
    nonzero = not zero
    if zero:
        wit["i_nonzero"] = zero
    bad_basis, bad_flat = [], []
    if nonzero:
        got = frame_signs(ctx.frames, X)
        for fr in ctx.frames:
            ref, now = ctx.reference[fr.key], got[fr.key]
            if ref == 0 and now != 0:
                bad_flat.append({"frame": fr.key, "det_sign": now})
            elif ref != 0 and now != ref:
                bad_basis.append({"frame": fr.key, "expected": ref, "det_sign": now})
    if bad_basis:
        wit["ii_basis_sign"] = bad_basis[:5]
    if bad_flat:
        wit["iii_flat"] = bad_flat[:5]
    bad_inf = [v for v in ctx.node_ids if ctx.at_infinity[v] and X[v][0] != 0]
    bad_int = [v for v in ctx.node_ids if not ctx.at_infinity[v] and X[v][0] <= 0]
    if bad_inf:
        wit["iv_at_infinity"] = bad_inf
    if bad_int:
        wit["v_interior"] = bad_int
    report = ConstraintReport(nonzero, not bad_basis, not bad_flat, not bad_inf, not bad_int, None, None, 0, "")
    report.witnesses = wit
    failed = [name for name, ok in (("i", nonzero), ("ii", not bad_basis), ("iii", not bad_flat), ("iv", not bad_inf), ("v", not bad_int)) if not ok]
    if failed:
        report.verdict = f"fail ({','.join(failed)})"
        return report
    cells = _cell_cones(ctx, X)
    hyper = _spanned_hyperplanes([gens for _, gens, _ in cells], ctx.P.d)
    g, count, used = search_g([c for _, _, c in cells], hyper, ctx.P.dim, seed, trials)
    report.generic_g, report.cones_containing_g, report.g_trials = g, count, used
    if g is None:
        report.verdict = "indeterminate"
    elif count == 1:
        report.verdict = "pass"
    else:
        report.verdict = "fail (g-condition)"
    return report


def identity_assignment(N: NodeSystem) -> NodeAssignment:
    return dict(N.vectors())


# ---------------------------------------------------------------------------
# export


def _var(node: str, k: int) -> str:
    return f"x_{node}_{k}"


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    seen = list(p)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def det_polynomial(nodes: Sequence[str], scale: int = 1) -> list[list]:
    """Leibniz expansion of scale * det(x_{v_0}, ..., x_{v_d}) as sparse terms."""
    m = len(nodes)
    terms = []
    for p in permutations(range(m)):
        coef = scale * _perm_sign(p)
        mono = sorted([_var(nodes[i], p[i]), 1] for i in range(m))
        terms.append([str(coef), mono])
    terms.sort(key=lambda t: [v for v, _ in t[1]])
    return terms


def export_constraints(P: Partition, N: NodeSystem | None = None, ctx: RealizationContext | None = None) -> dict:
    """Polynomial constraint system; polynomials are lists of [coef, [[var, exp], ...]]."""
    ctx = ctx or prepare(P, N)
    d = ctx.P.d
    nodes = ctx.node_ids
    variables = [_var(v, k) for v in nodes for k in range(d + 1)]
    equalities, strict, normalization = [], [], []
    for fr in ctx.frames:
        s = ctx.reference[fr.key]
        if s == 0:
            equalities.append({"kind": "flat", "frame": fr.key, "poly": det_polynomial(fr.nodes)})
        else:
            strict.append({"kind": "basis", "frame": fr.key, "poly": det_polynomial(fr.nodes, s)})
    for v in nodes:
        if ctx.at_infinity[v]:
            equalities.append({"kind": "at_infinity", "node": v, "poly": [["1", [[_var(v, 0), 1]]]]})
        else:
            strict.append({"kind": "interior", "node": v, "poly": [["1", [[_var(v, 0), 1]]]]})
        normalization.append({"kind": "unit", "node": v, "poly": [["1", [[_var(v, k), 2]]] for k in range(d + 1)] + [["-1", []]]})
    g_vars = [f"g_{k}" for k in range(d + 1)]
    cells = []
    for key in ctx.top_cells:
        members = sorted(ctx.PN.cells[key].nodes)
        lam = [f"lam_{key}_{v}" for v in members]
        rows = []
        for k in range(d + 1):
            poly = [["1", [[g_vars[k], 1]]]] + [["-1", sorted([[lv, 1], [_var(v, k), 1]])] for lv, v in zip(lam, members)]
            rows.append(poly)
        cells.append({"cell": key, "slack": lam, "membership_equalities": rows, "slack_positive": lam})
    generic = []
    for key in ctx.top_cells:
        for sub in combinations(sorted(ctx.PN.cells[key].nodes), d):
            generic.append({"nodes": list(sub), "poly_nonzero": _g_det_poly(sub, g_vars)})
    return {
        "variables": variables,
        "equalities": equalities,
        "strict_inequalities": strict,
        "normalization": normalization,
        "g_block": {
            "variables": g_vars,
            "cells": cells,
            "condition": "exactly one cell admits slack values > 0 solving its membership equalities",
            "genericity": generic,
        },
        "relations": {"equalities": "= 0", "strict_inequalities": "> 0", "normalization": "= 0"},
    }


def _g_det_poly(sub: Sequence[str], g_vars: Sequence[str]) -> list[list]:
    m = len(sub) + 1
    terms = []
    for p in permutations(range(m)):
        coef = _perm_sign(p)
        mono = [[g_vars[p[0]], 1]] + [[_var(sub[i - 1], p[i]), 1] for i in range(1, m)]
        terms.append([str(coef), sorted(mono)])
    terms.sort(key=lambda t: [v for v, _ in t[1]])
    return terms


def evaluate_poly(poly: Sequence, values: Mapping[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for coef, mono in poly:
        term = Fraction(coef)
        for var, exp in mono:
            term *= values[var] ** exp
        total += term
    return total


def assignment_values(X: Mapping[str, HVector]) -> dict[str, Fraction]:
    return {_var(v, k): Fraction(x) for v, vec in X.items() for k, x in enumerate(vec)}


def satisfies_export(doc: dict, X: Mapping[str, HVector]) -> bool:
    """Substitute X into the equalities and strict inequalities (not the g-block).

    The normalization block is skipped because assignments are projective.
    """
    vals = assignment_values(X)
    if any(evaluate_poly(e["poly"], vals) != 0 for e in doc["equalities"]):
        return False
    return all(evaluate_poly(e["poly"], vals) > 0 for e in doc["strict_inequalities"])


# ---------------------------------------------------------------------------
# cone partitions


def cone_facets(generators: Sequence[HVector]) -> dict:
    """Dimension and facets of cone(generators), facets deduplicated by normal."""
    gens = [tuple(Fraction(x) for x in g) for g in generators]
    dim, facets = _cone_facets(gens)
    return {
        "dim": dim,
        "facets": [{"normal": f.normal, "generators": list(f.generators)} for f in facets],
    }


@dataclass
class FZResult:
    verdict: object  # True, False or "indeterminate"
    g: HVector | None = None
    cones_containing_g: int | None = None
    unmatched: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "g": None if self.g is None else [str(x) for x in self.g],
            "cones_containing_g": self.cones_containing_g,
            "unmatched_facets": self.unmatched,
            "notes": self.notes,
        }


def fz_check(
    cones: Sequence[Sequence[HVector]],
    ambient: HomogeneousCone,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
) -> FZResult:
    """Cone-partition test: one generic g in exactly one cone, and every
    interior facet of a cone is exactly the intersection with a neighbour
    having it as a facet."""
    dim = ambient.ambient_dim
    res = FZResult(False)
    gens = [[tuple(Fraction(x) for x in g) for g in c] for c in cones]
    for k, c in enumerate(gens):
        if any(not ambient.contains(g) for g in c):
            res.notes.append(f"cone {k} is not inside the ambient cone")
            return res
    hreps, facet_lists = [], []
    for k, c in enumerate(gens):
        r, facets = _cone_facets(c)
        if r != dim:
            res.notes.append(f"cone {k} has dimension {r}, expected {dim}")
            return res
        hreps.append(cone_hrep(c, dim))
        facet_lists.append(facets)
    # facet matching
    by_normal: dict[HVector, list[tuple[int, HomogeneousCone]]] = {}
    facet_cones: list[list[HomogeneousCone]] = []
    for k, facets in enumerate(facet_lists):
        cur = []
        for f in facets:
            fc = cone_hrep([gens[k][i] for i in f.generators], dim)
            cur.append(fc)
            by_normal.setdefault(projective_key(f.normal), []).append((k, fc))
        facet_cones.append(cur)
    amb_rows = ambient.inequalities + ambient.equalities
    for k, facets in enumerate(facet_lists):
        for f, fc in zip(facets, facet_cones[k]):
            on = [gens[k][i] for i in f.generators]
            if any(all(dot(b, v) == 0 for v in on) for b in amb_rows):
                continue  # facet lies in the ambient boundary
            ok = False
            for j, other in by_normal.get(projective_key(neg(f.normal)), []):
                if j == k or not cone_equal(fc, other):
                    continue
                if cone_equal(hreps[k].intersect(hreps[j]), fc):
                    ok = True
                    break
            if not ok:
                res.unmatched.append({"cone": k, "normal": [str(x) for x in f.normal]})
    hyper = _spanned_hyperplanes(gens, dim - 1)
    g, count, _ = search_g(hreps, hyper, dim, seed, trials, ambient)
    res.g, res.cones_containing_g = g, count
    if res.unmatched:
        res.verdict = False
    elif g is None:
        res.verdict = "indeterminate"
    else:
        res.verdict = count == 1
    return res


def partition_cone_family(
    P: Partition,
    N: NodeSystem | None = None,
    X: Mapping[str, HVector] | None = None,
    ctx: RealizationContext | None = None,
) -> list[list[HVector]]:
    """Simplicial cones over barycentres of complete flags of P_N.

    With an assignment X the barycentres are taken of the assigned vectors.
    Unlike the raw region cones these meet face to face.
    """
    ctx = ctx or prepare(P, N)
    vecs = X if X is not None else ctx.N.vectors()
    bary: dict[str, HVector] = {}
    for key, cell in ctx.PN.cells.items():
        if cell.dim < 0:
            continue
        total = tuple(Fraction(0) for _ in range(ctx.P.dim))
        for v in cell.nodes:
            total = add(total, primitive(tuple(vecs[v])))
        bary[key] = primitive(total)
    return [[bary[k] for k in flag] for flag in complete_flags(ctx.PN)]


def cone_generators(C: HomogeneousCone) -> list[HVector]:
    """Finite generating set: extreme rays of the pointed part plus +-lineality basis."""
    lin = nullspace(list(C.inequalities) + list(C.equalities), C.ambient_dim)
    if not lin:
        return cone_rays(C)
    gens = [primitive(v) for v in lin] + [primitive(neg(v)) for v in lin]
    pointed = HomogeneousCone(C.inequalities, C.equalities + tuple(lin), C.ambient_dim)
    if pointed.dim > 0:
        gens = cone_rays(pointed) + gens
    return gens


def region_cone_family(P: Partition) -> list[list[HVector]]:
    """Generators of each nonempty region cone."""
    return [cone_generators(P.region(i)) for i in P.nonempty_labels()]


def assignment_cone_family(ctx: RealizationContext, X: Mapping[str, HVector]) -> list[list[HVector]]:
    """Cones spanned by the assigned nodes of each top cell of P_N."""
    return [[X[v] for v in sorted(ctx.PN.cells[k].nodes)] for k in ctx.top_cells]


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct(
    P: Partition,
    N: NodeSystem | None,
    X: Mapping[str, HVector],
    seed: int = 0,
    ctx: RealizationContext | None = None,
    report: ConstraintReport | None = None,
    verify: bool = True,
) -> Partition:
    ctx = ctx or prepare(P, N)
    report = report or check_constraints(ctx.P, ctx.N, X, seed=seed, ctx=ctx)
    if not report.passed:
        raise ContractViolation(f"assignment does not satisfy the realization constraints: {report.verdict}")
    dim = ctx.P.dim
    chart = neg(unit(dim, 0))
    regions = []
    for i in range(1, ctx.P.n + 1):
        if ctx.P.region(i).empty:
            regions.append(HomogeneousCone.empty_set(dim))
            continue
        parent = frozenset({i})
        nodes = sorted({v for k in ctx.top_cells if ctx.PN.cells[k].parent == parent for v in ctx.PN.cells[k].nodes})
        hull = cone_hrep([tuple(Fraction(x) for x in X[v]) for v in nodes], dim)
        regions.append(HomogeneousCone((chart,) + hull.inequalities, hull.equalities, dim))
    Q = Partition(ctx.P.n, ctx.P.d, tuple(regions))
    if verify and not comb_equiv(ctx.P, Q):
        raise ConsistencyError("reconstructed partition is not combinatorially equivalent")
    return Q


def partitions_equal(P: Partition, Q: Partition) -> bool:
    """Region cones agree as sets (projective equality of all regions)."""
    if (P.n, P.d) != (Q.n, Q.d):
        return False
    for a, b in zip(P.regions, Q.regions):
        if a.empty != b.empty:
            return False
        if not a.empty and not cone_equal(a, b):
            return False
    return True


def node_label(P: Partition, index) -> str:
    return "v" + index_str(index, P.n)


# ---------------------------------------------------------------------------
# sampling oracle


@dataclass
class TilingSample:
    samples: int
    in_two_interiors: int
    uncovered: int

    @property
    def tiles(self) -> bool:
        return self.in_two_interiors == 0 and self.uncovered == 0

    def to_json(self) -> dict:
        return {"samples": self.samples, "in_two_interiors": self.in_two_interiors, "uncovered": self.uncovered, "tiles": self.tiles}


def tiling_oracle(cones: Sequence[Sequence[HVector]], dim: int, samples: int = 10_000, seed: int = 0, tol: float = 1e-12) -> TilingSample:
    """Floating-point check that random upper-halfspace points are covered
    by the cones and never lie in two cone interiors."""
    import numpy as np

    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((samples, dim))
    pts[:, 0] = np.abs(pts[:, 0])
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    inside = np.zeros(samples, dtype=int)
    covered = np.zeros(samples, dtype=bool)
    for gens in cones:
        h = cone_hrep([tuple(Fraction(x) for x in g) for g in gens], dim)
        vals = [pts @ np.array([float(x) for x in a]) for a in h.inequalities]
        eqs = [np.abs(pts @ np.array([float(x) for x in b])) for b in h.equalities]
        closed = np.ones(samples, dtype=bool)
        strict = np.ones(samples, dtype=bool) if not eqs else np.zeros(samples, dtype=bool)
        for v in vals:
            closed &= v <= tol
            strict &= v < -tol
        for e in eqs:
            closed &= e <= tol
        inside += strict
        covered |= closed
    return TilingSample(samples, int(np.sum(inside >= 2)), int(np.sum(~covered)))
