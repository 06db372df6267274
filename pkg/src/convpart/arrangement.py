"""Oriented central arrangements, their sign-vector regions and the carry test.

An arrangement stores one homogeneous normal ``c_ij`` per unordered pair
``i < j``; the region ``P_i`` of the carried partition is the set of points
whose lift ``(1, x)`` satisfies ``c_ij . (1, x) < 0`` for every ``j != i``.
Sign vectors are tuples of ``+1/-1`` indexed by :meth:`Arrangement.pairs`.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .exactgeom import (
    GeometryError,
    HomogeneousCone,
    HVector,
    hvec,
    is_zero,
    neg,
    scale,
    solve_strict,
    strict_feasible,
    unit,
)

SignVector = tuple[int, ...]

DEFAULT_ENUM_CAP = 24
CAP_ENV = "CONVPART_ENUM_CAP"


class CapExceeded(RuntimeError):
    """The hyperplane count exceeds the configured enumeration cap."""


class ContractViolation(RuntimeError):
    """A precondition of an operation does not hold."""


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise GeometryError(f"{CAP_ENV} must be an integer, got {raw!r}") from exc


def pair_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class Arrangement:
    n: int
    d: int
    normals: Mapping[tuple[int, int], HVector]

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise GeometryError("n and d must be positive")
        clean = {}
        for (i, j), c in self.normals.items():
            if not 1 <= i < j <= self.n:
                raise GeometryError(f"bad pair key {(i, j)}")
            c = hvec(c)
            if len(c) != self.d + 1:
                raise GeometryError(f"normal for {(i, j)} has length {len(c)}, expected {self.d + 1}")
            if is_zero(c):
                raise GeometryError(f"normal for {(i, j)} is zero")
            clean[(i, j)] = c
        if set(clean) != set(pair_list(self.n)):
            raise GeometryError(f"expected exactly {self.n * (self.n - 1) // 2} normals")
        object.__setattr__(self, "normals", dict(sorted(clean.items())))

    def pairs(self) -> list[tuple[int, int]]:
        return pair_list(self.n)

    def normal(self, i: int, j: int) -> HVector:
        """c_ij, with c_ji = -c_ij."""
        if i < j:
            return self.normals[(i, j)]
        return neg(self.normals[(j, i)])

    @property
    def dim(self) -> int:
        return self.d + 1

    def relabel(self, sigma: Mapping[int, int]) -> Arrangement:
        """Arrangement whose region sigma(i) is the old region i."""
        out = {}
        for (i, j), c in self.normals.items():
            a, b = sigma[i], sigma[j]
            out[(a, b) if a < b else (b, a)] = c if a < b else neg(c)
        return Arrangement(self.n, self.d, out)

    def transform(self, mat: Sequence[Sequence[Fraction]]) -> Arrangement:
        """Apply the linear map x -> M x to the space; normals map by M^{-T}.

        M should fix the chart (first row e_0) for the result to describe the
        image partition.
        """
        from .exactgeom import solve_linear

        dim = self.dim
        mt = [[Fraction(mat[r][c]) for r in range(dim)] for c in range(dim)]  # M^T
        out = {}
        for key, c in self.normals.items():
            # new normal c' with c' . (M x) = c . x  =>  M^T c' = c
            sol = solve_linear(mt, list(c))
            if sol is None:
                raise GeometryError("singular transformation")
            out[key] = tuple(sol)
        return Arrangement(self.n, self.d, out)


# ---------------------------------------------------------------------------
# sign vectors and tournaments


def region_inequalities(A: Arrangement, s: SignVector) -> list[HVector]:
    """Normals {s_ij c_ij} in pair order followed by the chart normal -e_0."""
    pairs = A.pairs()
    if len(s) != len(pairs):
        raise GeometryError("sign vector length does not match the arrangement")
    out = [scale(A.normals[p], sv) for p, sv in zip(pairs, s)]
    out.append(neg(unit(A.dim, 0)))
    return out


def region_nonempty(A: Arrangement, s: SignVector) -> bool:
    return strict_feasible(region_inequalities(A, s), A.dim)


def region_witness(A: Arrangement, s: SignVector) -> HVector | None:
    """A homogeneous point of R_s (with x_0 > 0), or None when empty."""
    return solve_strict(region_inequalities(A, s), dim=A.dim)


def _check_cap(count: int) -> None:
    cap = enumeration_cap()
    if count > cap:
        raise CapExceeded(f"{count} hyperplanes exceed the enumeration cap {cap} (set {CAP_ENV} to override)")


def enumerate_nonempty_regions(A: Arrangement) -> list[SignVector]:
    """All sign vectors with a nonempty region, lexicographically sorted."""
    pairs = A.pairs()
    _check_cap(len(pairs))
    chart = neg(unit(A.dim, 0))
    normals = [A.normals[p] for p in pairs]
    out: list[SignVector] = []

    def dfs(prefix: list[int], rows: list[HVector]) -> None:
        if len(prefix) == len(pairs):
            out.append(tuple(prefix))
            return
        c = normals[len(prefix)]
        for sv in (-1, 1):
            row = scale(c, sv)
            if strict_feasible(rows + [row], A.dim):
                prefix.append(sv)
                dfs(prefix, rows + [row])
                prefix.pop()

    dfs([], [chart])
    return sorted(out)


def source(s: SignVector, n: int) -> int | None:
    """The vertex beating every other vertex in the tournament of ``s``."""
    pairs = pair_list(n)
    if len(s) != len(pairs):
        raise GeometryError("sign vector length does not match n")
    wins = {i: 0 for i in range(1, n + 1)}
    for (i, j), sv in zip(pairs, s):
        # s_ij = +1 orients the edge i -> j, so i beats j
        wins[i if sv == 1 else j] += 1
    found = [i for i, w in wins.items() if w == n - 1]
    assert len(found) <= 1, "a tournament has at most one source"
    return found[0] if found else None


def sign_vector_of_point(A: Arrangement, x: HVector) -> SignVector | None:
    """Sign vector of the cell containing x, or None if x lies on some H_ij.

    s_ij is chosen so that s_ij c_ij . x < 0.
    """
    out = []
    for p in A.pairs():
        v = sum((a * b for a, b in zip(A.normals[p], x)), Fraction(0))
        if v == 0:
            return None
        out.append(-1 if v > 0 else 1)
    return tuple(out)


class Verdict(str, enum.Enum):
    CARRIES_PROPER = "carries_proper"
    CARRIES_NONPROPER = "carries_nonproper"
    DOES_NOT_CARRY = "does_not_carry"


@dataclass(frozen=True)
class CarryResult:
    verdict: Verdict
    sourceless: SignVector | None = None
    sourceless_point: HVector | None = None
    missing_labels: tuple[int, ...] = ()
    regions: tuple[SignVector, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.sourceless is not None:
            out["witness"] = {"sign_vector": list(self.sourceless), "point": [str(x) for x in self.sourceless_point]}
        if self.verdict is Verdict.CARRIES_NONPROPER:
            out["witness"] = {"labels_without_region": list(self.missing_labels)}
        out["nonempty_regions"] = len(self.regions)
        return out


def carries(A: Arrangement) -> CarryResult:
    """Source test: A carries a partition iff every nonempty cell has a source."""
    regions = enumerate_nonempty_regions(A)
    sourced: set[int] = set()
    for s in regions:
        src = source(s, A.n)
        if src is None:
            return CarryResult(Verdict.DOES_NOT_CARRY, s, region_witness(A, s), regions=tuple(regions))
        sourced.add(src)
    missing = tuple(i for i in range(1, A.n + 1) if i not in sourced)
    verdict = Verdict.CARRIES_NONPROPER if missing else Verdict.CARRIES_PROPER
    return CarryResult(verdict, missing_labels=missing, regions=tuple(regions))


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class Partition:
    """Region cones C_1..C_n in R^{d+1}; empty regions use an empty cone."""

    n: int
    d: int
    regions: tuple[HomogeneousCone, ...]
    provenance: Arrangement | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.regions) != self.n:
            raise GeometryError("expected one cone per region")
        object.__setattr__(self, "regions", tuple(self.regions))
        for c in self.regions:
            if c.ambient_dim != self.d + 1:
                raise GeometryError("region cone has the wrong ambient dimension")

    @property
    def dim(self) -> int:
        return self.d + 1

    def region(self, i: int) -> HomogeneousCone:
        return self.regions[i - 1]

    def nonempty_labels(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if not self.region(i).empty]

    @property
    def proper(self) -> bool:
        return all(not c.empty for c in self.regions)

    def relabel(self, sigma: Mapping[int, int]) -> Partition:
        regions = [None] * self.n
        for i in range(1, self.n + 1):
            regions[sigma[i] - 1] = self.region(i)
        return Partition(self.n, self.d, tuple(regions))


def region_cone_of(A: Arrangement, i: int) -> HomogeneousCone:
    """C_i = {x_0 >= 0, c_ij . x <= 0}, or the empty cone if P_i is empty."""
    rows = [A.normal(i, j) for j in range(1, A.n + 1) if j != i]
    chart = neg(unit(A.dim, 0))
    if not strict_feasible(rows + [chart], A.dim):
        return HomogeneousCone.empty_set(A.dim)
    return HomogeneousCone(tuple([chart] + rows), (), A.dim)


def project_pi(A: Arrangement, check: bool = True) -> Partition:
    """The partition carried by A."""
    if check and carries(A).verdict is Verdict.DOES_NOT_CARRY:
        raise ContractViolation("the arrangement does not carry a partition")
    regions = tuple(region_cone_of(A, i) for i in range(1, A.n + 1))
    return Partition(A.n, A.d, regions, provenance=A)


def open_region_of_point(A: Arrangement, x: Sequence[Fraction]) -> list[int]:
    """Labels i with x in the open region P_i (x given homogeneously, x_0 > 0)."""
    out = []
    for i in range(1, A.n + 1):
        if all(sum((a * b for a, b in zip(A.normal(i, j), x)), Fraction(0)) < 0 for j in range(1, A.n + 1) if j != i):
            out.append(i)
    return out


def brute_force_regions(A: Arrangement) -> list[SignVector]:
    """Oracle: test every sign vector (exponential; for tests)."""
    return sorted(s for s in product((-1, 1), repeat=len(A.pairs())) if region_nonempty(A, s))


def arrangement_from_pairs(n: int, d: int, items: Iterable[tuple[tuple[int, int], Sequence]]) -> Arrangement:
    return Arrangement(n, d, {k: hvec(v) for k, v in items})
