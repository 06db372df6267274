"""Canonical fixture partitions.

The JSON files next to this module are the on-disk form; the builders here
regenerate them and provide parameterized families (slivers, d = 1 cuts).
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .arrangement import Arrangement, Partition
from .exactgeom import HomogeneousCone, HVector, hvec, neg
from .io import arrangement_from_json

FIXTURE_NAMES = ("ex1", "ex1_broken", "parl", "y3", "pent", "polar2")

# counterclockwise rays of the pointed five-region fan
PENT_RAYS: tuple[tuple[int, int], ...] = ((0, 5), (-5, 2), (-3, -4), (3, -4), (5, 2))
# the doubled-angle reassignment: node v_s is sent to ray u_{sigma(s)}
PENT_DOUBLED = {1: 1, 2: 3, 3: 5, 4: 2, 5: 4}


def ex1(c12=(0, 1, -6), c34=(-1, 1, 0), c14=(0, 1, 0)) -> Arrangement:
    return Arrangement(4, 2, {
        (1, 2): hvec(*c12), (1, 3): hvec(0, 1, 0), (2, 3): hvec(0, 1, 0),
        (1, 4): hvec(*c14), (2, 4): hvec(0, 1, 0), (3, 4): hvec(*c34),
    })


def ex1_broken() -> Arrangement:
    """EX1 with H_14 moved to x = 2: the strip 1 < x < 2 has no source."""
    return ex1(c14=(-2, 1, 0))


def parl() -> Arrangement:
    return Arrangement(4, 2, {
        (1, 2): hvec(0, 1, 0), (2, 3): hvec(-1, 1, 0), (3, 4): hvec(-2, 1, 0),
        (1, 3): hvec(0, 1, 0), (1, 4): hvec(0, 1, 0), (2, 4): hvec(-1, 1, 0),
    })


def y3() -> Arrangement:
    return Arrangement(3, 2, {(1, 2): hvec(0, 0, -1), (1, 3): hvec(0, 1, 0), (2, 3): hvec(0, 1, 0)})


def _ray_normal(u) -> HVector:
    # negative exactly on the clockwise side of the line through u
    return hvec(0, -u[1], u[0])


def pent() -> Arrangement:
    normals = {}
    for i in range(1, 6):
        for step in (1, 2):
            j = (i - 1 + step) % 5 + 1
            c = _ray_normal(PENT_RAYS[(i - 1 + step) % 5])
            normals[(i, j) if i < j else (j, i)] = c if i < j else neg(c)
    return Arrangement(5, 2, normals)


def polar2(sign: int = 1, d: int = 2) -> Arrangement:
    """n = 2 with c_12 = +-e_0: a single nonempty region."""
    return Arrangement(2, d, {(1, 2): tuple(Fraction(sign * int(k == 0)) for k in range(d + 1))})


def sliver(eps) -> Arrangement:
    """Y3 plus a triangular region 4 of size eps at the origin; eps = 0 is the limit."""
    e = Fraction(eps)
    return Arrangement(4, 2, {
        (1, 2): hvec(0, 0, -1), (1, 3): hvec(0, 1, 0), (2, 3): hvec(0, 1, 0),
        (1, 4): hvec(e, 1, -1), (2, 4): hvec(e, 1, 1), (3, 4): hvec(0, -1, 0),
    })


def one_region(d: int = 2) -> Partition:
    return Partition(1, d, (HomogeneousCone.upper(d + 1),))


def reflect(A: Arrangement, axis: int = 1) -> Arrangement:
    """Mirror image under x_axis -> -x_axis."""
    normals = {}
    for key, c in A.normals.items():
        normals[key] = tuple(-x if k == axis else x for k, x in enumerate(c))
    return Arrangement(A.n, A.d, normals)


_BUILDERS = {
    "ex1": ex1,
    "ex1_broken": ex1_broken,
    "parl": parl,
    "y3": y3,
    "pent": pent,
    "polar2": polar2,
}


def load(name: str) -> Arrangement:
    """Load a shipped fixture from its JSON file."""
    import json

    text = resources.files(__package__).joinpath("data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return arrangement_from_json(json.loads(text))


def build(name: str) -> Arrangement:
    return _BUILDERS[name]()


def fixture_path(name: str):
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.json")


# ---------------------------------------------------------------------------
# assignments used by the realization checks


def pent_doubled_assignment(N) -> dict[str, HVector]:
    """Send the node on ray u_s to the point at infinity of ray u_sigma(s).

    The origin node is kept. The resulting fan winds twice around the
    origin, so every generic direction lies in two of the cell cones.
    """
    out = {}
    for node, x in N.vectors().items():
        if x[0] != 0:
            out[node] = x
            continue
        s = _ray_index(x)
        u = PENT_RAYS[PENT_DOUBLED[s] - 1]
        out[node] = hvec(0, *u)
    return out


def _ray_index(x: HVector) -> int:
    for k, u in enumerate(PENT_RAYS, start=1):
        if x[1] * u[1] == x[2] * u[0] and x[1] * u[0] + x[2] * u[1] > 0:
            return k
    raise ValueError(f"{x} is not on a PENT ray")


def _affine_matrix(rng) -> list[list[Fraction]]:
    """Chart-preserving map (1, p) -> (1, Ap + t) with det A > 0, close to identity."""
    while True:
        a = [[Fraction(int(i == j)) + Fraction(rng.randint(-8, 8), 64) for j in range(2)] for i in range(2)]
        if a[0][0] * a[1][1] - a[0][1] * a[1][0] > 0:
            break
    t = [Fraction(rng.randint(-8, 8), 16) for _ in range(2)]
    return [
        [Fraction(1), Fraction(0), Fraction(0)],
        [t[0], a[0][0], a[0][1]],
        [t[1], a[1][0], a[1][1]],
    ]


def perturbed_ex1(seed: int) -> Arrangement:
    """EX1 with its walls moved by small seeded rational amounts, then mapped
    by a random orientation-preserving affine map."""
    import random

    rng = random.Random(seed)
    c12 = (Fraction(rng.randint(-4, 4), 8), Fraction(1), Fraction(-6) + Fraction(rng.randint(-8, 8), 8))
    c34 = (Fraction(-1) + Fraction(rng.randint(-4, 4), 8), Fraction(1), Fraction(0))
    return ex1(c12=c12, c34=c34).transform(_affine_matrix(rng))
