"""SVG drawings of partitions of the plane.

Two views: the affine chart clipped to a window, and the upper hemisphere
seen from above (orthographic projection of S^2_+ onto the unit disk). All
geometry is exact until the final float formatting, so output bytes are
deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arrangement import Partition
from .exactgeom import GeometryError, HomogeneousCone, cone_rays, neg, nullspace

PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd")
SIZE = 400
ARC_STEPS = 32


class UnsupportedDimension(GeometryError):
    pass


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        '<rect x="0" y="0" width="{0}" height="{0}" fill="white"/>'.format(SIZE),
    ]


def _path(points: Sequence[tuple[float, float]], fill: str) -> str:
    d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in points) + " Z"
    return f'<path d="{d}" fill="{fill}" stroke="black" stroke-width="1.5" stroke-linejoin="round"/>'


def _label(x: float, y: float, text: str) -> str:
    return f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" font-size="16" text-anchor="middle" dominant-baseline="middle">{text}</text>'


def _require_plane(P: Partition) -> None:
    if P.d != 2:
        raise UnsupportedDimension(f"rendering needs d = 2, got d = {P.d}")


# ---------------------------------------------------------------------------
# affine view


def clip_polygon(poly: list[tuple[Fraction, Fraction]], a: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    """Keep the part of a convex polygon where a_0 + a_1 x + a_2 y <= 0."""
    def val(p):
        return a[0] + a[1] * p[0] + a[2] * p[1]

    out = []
    for k, cur in enumerate(poly):
        nxt = poly[(k + 1) % len(poly)]
        vc, vn = val(cur), val(nxt)
        if vc <= 0:
            out.append(cur)
        if (vc < 0 < vn) or (vn < 0 < vc):
            t = vc / (vc - vn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def affine_polygons(P: Partition, window: Sequence) -> dict[int, list[tuple[Fraction, Fraction]]]:
    x0, x1, y0, y1 = (Fraction(w) for w in window)
    box = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    out = {}
    for i in P.nonempty_labels():
        poly = box
        C = P.region(i)
        for a in C.inequalities:
            poly = clip_polygon(poly, a)
            if not poly:
                break
        for b in C.equalities:
            poly = clip_polygon(clip_polygon(poly, b), neg(b))
        if len(poly) >= 3:
            out[i] = poly
    return out


def render_affine(P: Partition, window: Sequence = (-3, 3, -3, 3)) -> str:
    _require_plane(P)
    x0, x1, y0, y1 = (Fraction(w) for w in window)
    if x0 >= x1 or y0 >= y1:
        raise GeometryError("window must satisfy xmin < xmax and ymin < ymax")
    sx, sy = SIZE / float(x1 - x0), SIZE / float(y1 - y0)

    def screen(p):
        return (float(p[0] - x0) * sx, float(y1 - p[1]) * sy)

    lines = _header("affine view")
    polys = affine_polygons(P, window)
    for i, poly in polys.items():
        lines.append(_path([screen(p) for p in poly], PALETTE[(i - 1) % len(PALETTE)]))
    for i, poly in polys.items():
        cx = sum(p[0] for p in poly) / len(poly)
        cy = sum(p[1] for p in poly) / len(poly)
        lines.append(_label(*screen((cx, cy)), str(i)))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# hemisphere view


def _unitf(v) -> tuple[float, float, float]:
    x = [float(t) for t in v]
    r = math.sqrt(sum(t * t for t in x))
    return (x[0] / r, x[1] / r, x[2] / r)


def _slerp(a, b, steps: int) -> list[tuple[float, float, float]]:
    """Points along the short great-circle arc from a to b (b excluded)."""
    out = []
    for k in range(steps):
        t = k / steps
        p = [a[j] * (1 - t) + b[j] * t for j in range(3)]
        r = math.sqrt(sum(x * x for x in p))
        out.append(tuple(x / r for x in p))
    return out


def _det3(a, b, c) -> float:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _facet_arc(C: HomogeneousCone, a) -> list[tuple[float, float, float]]:
    """Sample points of the boundary arc of C in the plane a . x = 0."""
    face = HomogeneousCone(C.inequalities, C.equalities + (a,), C.ambient_dim)
    if face.dim < 2:
        return []
    mid = _unitf(face.relint_point)
    if face.lineality_dim == 0:
        r1, r2 = (_unitf(r) for r in cone_rays(face))
        return _slerp(r1, mid, ARC_STEPS // 2) + _slerp(mid, r2, ARC_STEPS // 2) + [r2]
    if face.lineality_dim == 1:
        line = nullspace(list(face.inequalities) + list(face.equalities), 3)[0]
        l, m = _unitf(line), _unitf(neg(line))
        return _slerp(l, mid, ARC_STEPS // 2) + _slerp(mid, m, ARC_STEPS // 2) + [m]
    # the whole plane: a full great circle
    basis = [_unitf(v) for v in nullspace(face.affine_equalities, 3)]
    u, w = basis[0], basis[1]
    w = _orthonormal(u, w)
    return [tuple(u[j] * math.cos(t) + w[j] * math.sin(t) for j in range(3)) for t in (2 * math.pi * k / (4 * ARC_STEPS) for k in range(4 * ARC_STEPS + 1))]


def _orthonormal(u, w):
    d = sum(x * y for x, y in zip(u, w))
    v = [w[j] - d * u[j] for j in range(3)]
    r = math.sqrt(sum(x * x for x in v))
    return tuple(x / r for x in v)


def hemisphere_outline(C: HomogeneousCone) -> list[tuple[float, float, float]]:
    """Closed boundary of C on the upper hemisphere as a cyclic point list."""
    p = _unitf(C.relint_point)
    arcs = []
    for i in C.facet_indices:
        arc = _facet_arc(C, C.inequalities[i])
        if len(arc) < 2:
            continue
        mid = arc[len(arc) // 2]
        if _det3(p, arc[0], mid) < 0:
            arc = arc[::-1]
        arcs.append(arc)
    if not arcs:
        return []
    # order the arcs counterclockwise around p
    e1 = _orthonormal(p, _any_perp(p))
    e2 = (p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0])

    def angle(arc):
        q = arc[0]
        return math.atan2(sum(x * y for x, y in zip(q, e2)), sum(x * y for x, y in zip(q, e1)))

    arcs.sort(key=angle)
    pts = []
    for arc in arcs:
        pts.extend(arc[:-1])
    return pts


def _any_perp(p):
    k = min(range(3), key=lambda j: abs(p[j]))
    e = [0.0, 0.0, 0.0]
    e[k] = 1.0
    return tuple(e)


def render_hemisphere(P: Partition) -> str:
    _require_plane(P)
    half = SIZE / 2
    rad = half - 10

    def screen(q):
        return (half + rad * q[1], half - rad * q[2])

    lines = _header("hemisphere view")
    labels = []
    for i in P.nonempty_labels():
        C = P.region(i)
        if C.dim < 3:
            continue
        outline = hemisphere_outline(C)
        fill = PALETTE[(i - 1) % len(PALETTE)]
        if outline:
            lines.append(_path([screen(q) for q in outline], fill))
        labels.append(_label(*screen(_unitf(C.relint_point)), str(i)))
    lines.append(f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(rad)}" fill="none" stroke="black" stroke-width="2"/>')
    lines.extend(labels)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render(P: Partition, view: str = "hemisphere", window: Sequence = (-3, 3, -3, 3)) -> str:
    if view == "affine":
        return render_affine(P, window)
    if view == "hemisphere":
        return render_hemisphere(P)
    raise GeometryError(f"unknown view {view!r}")
