"""Spherical measure of region cones and the symmetric-difference distance.

The measure of a region is the d-volume of its cone intersected with the
unit sphere. For d = 1 and d = 2 it is computed in closed form from the
exact cone; for d >= 3 (or on request) it is estimated by seeded Monte
Carlo sampling on the upper hemisphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arrangement import Partition
from .exactgeom import GeometryError, HomogeneousCone, cone_contains, cone_rays, dot, unit

EXACT_TOL = 1e-9
DEFAULT_SAMPLES = 200_000
CHUNK = 1 << 16


def hemisphere_volume(d: int) -> float:
    """vol_d(S^d_+) = pi^((d+1)/2) / Gamma((d+1)/2)."""
    return math.pi ** ((d + 1) / 2) / math.gamma((d + 1) / 2)


@dataclass(frozen=True)
class SphericalMeasureValue:
    value: float
    method: str  # "exact_d1", "exact_d2" or "monte_carlo"
    stderr: float = 0.0
    seed: int | None = None

    def __add__(self, other: SphericalMeasureValue) -> SphericalMeasureValue:
        method = self.method if self.method == other.method else _merge_method(self.method, other.method)
        return SphericalMeasureValue(
            self.value + other.value,
            method,
            math.hypot(self.stderr, other.stderr),
            self.seed if self.seed is not None else other.seed,
        )

    def to_json(self) -> dict:
        out = {"value": self.value, "method": self.method, "stderr": self.stderr}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _merge_method(a: str, b: str) -> str:
    return "monte_carlo" if "monte_carlo" in (a, b) else a


def _unit(v) -> np.ndarray:
    arr = np.array([float(x) for x in v])
    return arr / np.linalg.norm(arr)


def _angle(a: np.ndarray, b: np.ndarray) -> float:
    """Angle between unit vectors, stable near 0 and pi."""
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


def _check_region(C: HomogeneousCone) -> None:
    if C.empty:
        return
    if not cone_contains(HomogeneousCone.upper(C.ambient_dim), C):
        raise GeometryError("measure is defined for cones inside the upper halfspace")


def _exact_d1(C: HomogeneousCone) -> float:
    if C.empty or C.dim < 2:
        return 0.0
    if C.lineality_dim >= 1:
        # the cone is a closed halfplane inside x_0 >= 0, i.e. the whole arc
        return math.pi
    rays = cone_rays(C)
    if len(rays) != 2:
        raise GeometryError("a pointed 2-dimensional cone has two extreme rays")
    return _angle(_unit(rays[0]), _unit(rays[1]))


def _exact_d2(C: HomogeneousCone) -> float:
    """Gauss-Bonnet: area = 2 pi minus the turning angles between facets."""
    if C.empty or C.dim < 3:
        return 0.0
    normals = [_unit(C.inequalities[i]) for i in C.facet_indices]
    if len(normals) == 0:
        return 4 * math.pi
    if len(normals) == 1:
        return 2 * math.pi
    if C.lineality_dim >= 1:
        # a lune between two planes through a common line
        return 2 * math.pi - 2 * _angle(normals[0], normals[1])
    # each vertex of the polygon lies on exactly two edges
    rows = [C.inequalities[i] for i in C.facet_indices]
    turning = 0.0
    for r in cone_rays(C):
        on = [k for k, a in enumerate(rows) if dot(a, r) == 0]
        if len(on) != 2:
            raise GeometryError("a vertex of a spherical polygon lies on two edges")
        turning += _angle(normals[on[0]], normals[on[1]])
    return 2 * math.pi - turning


def _sample_chunk(d: int, seed: int, chunk: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([seed, chunk]))
    pts = rng.standard_normal((size, d + 1))
    return pts[pts[:, 0] > 0]


def hemisphere_samples(d: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` uniform points of the open upper hemisphere (unnormalized).

    Membership in cones is scale invariant, so the Gaussian samples are not
    normalized. Chunk ``c`` always draws from the substream (seed, c).
    """
    out = []
    have = 0
    chunk = 0
    while have < samples:
        pts = _sample_chunk(d, seed, chunk, CHUNK)
        out.append(pts)
        have += len(pts)
        chunk += 1
    return np.concatenate(out)[:samples]


def cone_mask(C: HomogeneousCone, pts: np.ndarray) -> np.ndarray:
    """Points (rows) lying in the closed cone, evaluated in floating point."""
    if C.empty:
        return np.zeros(len(pts), dtype=bool)
    mask = np.ones(len(pts), dtype=bool)
    for a in C.inequalities:
        mask &= pts @ np.array([float(x) for x in a]) <= 0
    for b in C.equalities:
        mask &= pts @ np.array([float(x) for x in b]) == 0
    return mask


def _mc(C: HomogeneousCone, d: int, samples: int, seed: int, pts: np.ndarray | None = None) -> SphericalMeasureValue:
    if pts is None:
        pts = hemisphere_samples(d, samples, seed)
    p = float(np.mean(cone_mask(C, pts)))
    vol = hemisphere_volume(d)
    return SphericalMeasureValue(p * vol, "monte_carlo", vol * math.sqrt(p * (1 - p) / len(pts)), seed)


def mu_region(
    C: HomogeneousCone,
    d: int,
    method: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int | None = None,
) -> SphericalMeasureValue:
    """Spherical volume of the cone C inside the upper hemisphere."""
    _check_region(C)
    if method is None:
        method = {1: "exact_d1", 2: "exact_d2"}.get(d, "monte_carlo")
    if method == "exact_d1":
        if d != 1:
            raise GeometryError("exact_d1 requires d = 1")
        return SphericalMeasureValue(_exact_d1(C), method)
    if method == "exact_d2":
        if d != 2:
            raise GeometryError("exact_d2 requires d = 2")
        return SphericalMeasureValue(_exact_d2(C), method)
    if method == "monte_carlo":
        if seed is None:
            raise GeometryError("Monte Carlo measures need an explicit seed")
        return _mc(C, d, samples, seed)
    raise GeometryError(f"unknown method {method!r}")


def sym_diff_measure(C: HomogeneousCone, D: HomogeneousCone, d: int, **kw) -> SphericalMeasureValue:
    """mu(C) + mu(D) - 2 mu(C cap D)."""
    a = mu_region(C, d, **kw)
    b = mu_region(D, d, **kw)
    if C.empty or D.empty:
        meet = 0.0
    else:
        meet = mu_region(C.intersect(D), d, **kw).value
    value = max(0.0, a.value + b.value - 2 * meet)
    stderr = 0.0
    if a.method == "monte_carlo":
        # the three estimates share samples; 2 sigma of each is a safe bound
        stderr = a.stderr + b.stderr
    return SphericalMeasureValue(value, a.method, stderr, a.seed)


def distance(P: Partition, Q: Partition, **kw) -> SphericalMeasureValue:
    """d_mu(P, Q) = sum over labels of mu(P_i symmetric-difference Q_i)."""
    if (P.n, P.d) != (Q.n, Q.d):
        raise GeometryError("partitions must share n and d")
    total: SphericalMeasureValue | None = None
    for i in range(1, P.n + 1):
        part = sym_diff_measure(P.region(i), Q.region(i), P.d, **kw)
        total = part if total is None else total + part
    return total


def total_measure(P: Partition, **kw) -> SphericalMeasureValue:
    total: SphericalMeasureValue | None = None
    for C in P.regions:
        m = mu_region(C, P.d, **kw)
        total = m if total is None else total + m
    return total


def total_measure_check(P: Partition, **kw) -> bool:
    """The region measures add up to the hemisphere volume."""
    t = total_measure(P, **kw)
    tol = 4 * t.stderr if t.method == "monte_carlo" else EXACT_TOL
    return abs(t.value - hemisphere_volume(P.d)) <= tol


def cones_measure_check(cones: Sequence[HomogeneousCone], d: int) -> bool:
    """Measure form of the covering property for a bare list of region cones."""
    total = sum(mu_region(C, d).value for C in cones)
    return abs(total - hemisphere_volume(d)) <= EXACT_TOL


def float_vector(v) -> list[float]:
    return [float(Fraction(x)) for x in v]


def chart_unit(d: int):
    return unit(d + 1, 0)
