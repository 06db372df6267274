"""Shared, cached partitions for the test suite.

Random partitions are power diagrams (always carried by their arrangement),
so every seed yields a valid, possibly non-proper, partition.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from convpart import fixtures
from convpart.arrangement import Arrangement, Partition, project_pi
from convpart.faces import FacePoset, enumerate_faces
from convpart.realization import RealizationContext, prepare

POOL_SIZE = 110


def power_arrangement(seed: int, n: int | None = None, d: int = 2) -> Arrangement:
    rng = random.Random(seed)
    n = n if n is not None else 3 + seed % 2
    while True:
        sites = [[rng.randint(-4, 4) for _ in range(d)] for _ in range(n)]
        if len({tuple(s) for s in sites}) == n:
            break
    w = [rng.randint(0, 6) for _ in range(n)]
    normals = {}
    for i in range(n):
        for j in range(i + 1, n):
            c0 = sum(x * x for x in sites[i]) - sum(x * x for x in sites[j]) - w[i] + w[j]
            normals[(i + 1, j + 1)] = (Fraction(c0),) + tuple(Fraction(2 * (b - a)) for a, b in zip(sites[i], sites[j]))
    return Arrangement(n, d, normals)


def random_arrangement(rng: random.Random, n: int, d: int, bound: int = 3) -> Arrangement:
    normals = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            while True:
                c = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d + 1))
                if any(c):
                    break
            normals[(i, j)] = c
    return Arrangement(n, d, normals)


@lru_cache(maxsize=None)
def pool_partition(seed: int) -> Partition:
    return project_pi(power_arrangement(seed))


@lru_cache(maxsize=None)
def pool_poset(seed: int) -> FacePoset:
    return enumerate_faces(pool_partition(seed))


@lru_cache(maxsize=None)
def pool_ctx(seed: int) -> RealizationContext:
    return prepare(pool_partition(seed), poset=pool_poset(seed))


FIXTURE_KEYS = ("ex1", "parl", "y3", "pent", "one_region")


@lru_cache(maxsize=None)
def fixture_partition(name: str) -> Partition:
    if name == "one_region":
        return fixtures.one_region()
    return project_pi(fixtures.build(name))


@lru_cache(maxsize=None)
def fixture_poset(name: str) -> FacePoset:
    return enumerate_faces(fixture_partition(name))


@lru_cache(maxsize=None)
def fixture_ctx(name: str) -> RealizationContext:
    return prepare(fixture_partition(name), poset=fixture_poset(name))
