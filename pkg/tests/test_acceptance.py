"""Acceptance criteria 1-12, one test each.

Every test records a one-line verdict in RESULTS; conftest prints the lines
at the end of the run. Running this file as a script prints them as well.
"""

from __future__ import annotations

import json
import math
import random
import time
from collections import defaultdict
from fractions import Fraction
from itertools import product
from math import comb, factorial

import numpy as np
import pytest

from convpart import fixtures
from convpart.arrangement import Arrangement, Verdict, carries, project_pi
from convpart.atlas import d1_partition, enum_d1_types
from convpart.exactgeom import HomogeneousCone, cone_contains, dot, hvec
from convpart.faces import enumerate_faces, half_linear_faces, index_str, is_essential, is_pointed, is_union_of_faces, subfaces
from convpart.metric import distance, mu_region, total_measure
from convpart.nodes import comb_equiv, default_node_system, node_system_dim
from convpart.realization import (
    assignment_cone_family,
    check_constraints,
    fz_check,
    identity_assignment,
    partition_cone_family,
    partitions_equal,
    prepare,
    reconstruct,
    tiling_oracle,
)

from _pool import POOL_SIZE, fixture_ctx, fixture_partition, pool_ctx, pool_partition, pool_poset, power_arrangement, random_arrangement

RESULTS: dict[int, tuple[bool, str]] = {}
PI_TOL = 1e-9


def record(num: int, ok: bool, line: str) -> None:
    RESULTS[num] = (ok, line)
    assert ok, line


def test_criterion_01_face_poset(capsys):
    from convpart.cli import main
    from test_faces import EX1_EDGES

    start = time.perf_counter()
    code = main(["faces", "ex1"])
    elapsed = time.perf_counter() - start
    out = json.loads(capsys.readouterr().out)
    edges = {(c, k) for k, f in out["faces"].items() for c in f["covers"]}
    ok = code == 0 and len(out["faces"]) == 16 and edges == EX1_EDGES and elapsed < 1.0
    record(1, ok, f"EX1 faces={len(out['faces'])} covers match reference={edges == EX1_EDGES} time={elapsed:.2f}s")


def test_criterion_02_half_linear_census():
    ex1 = {index_str(I) for I in half_linear_faces(fixture_partition("ex1"))}
    parl_poset = enumerate_faces(fixture_partition("parl"))
    parl = {I for I, f in parl_poset.faces.items() if f.half_linear}
    parl_edges = set(parl_poset.by_dim(1))
    pent_poset = enumerate_faces(fixture_partition("pent"))
    pent = {I for I, f in pent_poset.faces.items() if f.half_linear}
    ok = (
        len(ex1) == 6 and {"34", "4i"} <= ex1
        and parl == parl_edges and len(parl) == 5
        and pent == set(pent_poset.by_dim(0))
    )
    record(2, ok, f"EX1 {len(ex1)} half-linear; PARL {len(parl)} = its 1-faces; PENT vertices only={pent == set(pent_poset.by_dim(0))}")


def test_criterion_03_node_system_dims():
    got = {name: node_system_dim(fixture_partition(name)) for name in ("ex1", "pent", "parl")}
    record(3, got == {"ex1": 2, "pent": 0, "parl": 5}, f"dims {got}")


def test_criterion_04_d1_atlas():
    start = time.perf_counter()
    ok = True
    for n in range(1, 7):
        counts, _ = enum_d1_types(n)
        ok &= all(counts[k - 1] == factorial(k) * comb(n, k) for k in range(1, n + 1))
    elapsed = time.perf_counter() - start
    three = enum_d1_types(3)[0]
    record(4, ok and elapsed < 1.0, f"k!C(n,k) for n<=6; n=3 -> {three[0]}/{three[1]}/{three[2]}; time={elapsed:.3f}s")


def _oracle_agrees(A, seed: int) -> bool:
    res = carries(A)
    if res.verdict is Verdict.DOES_NOT_CARRY:
        x = res.sourceless_point
        return all(any(dot(A.normal(i, j), x) > 0 for j in range(1, A.n + 1) if j != i) for i in range(1, A.n + 1))
    rng = np.random.default_rng(seed)
    pts = np.hstack([np.ones((10_000, 1)), rng.normal(size=(10_000, A.d)) * 5])
    inside = np.zeros(len(pts), dtype=int)
    for i in range(1, A.n + 1):
        ok = np.ones(len(pts), dtype=bool)
        for j in range(1, A.n + 1):
            if j != i:
                ok &= pts @ np.array([float(x) for x in A.normal(i, j)]) < 0
        inside += ok
    if np.any(inside >= 2):
        return False
    # a carried proper partition covers almost every point
    return res.verdict is not Verdict.CARRIES_PROPER or np.count_nonzero(inside == 0) == 0


def test_criterion_05_source_oracle():
    verdicts = defaultdict(int)
    bad = 0
    for seed in range(200):
        rng = random.Random(50_000 + seed)
        A = random_arrangement(rng, rng.choice((2, 3)), rng.choice((1, 2)))
        verdicts[carries(A).verdict.value] += 1
        bad += not _oracle_agrees(A, seed)
    record(5, bad == 0, f"200 arrangements {dict(sorted(verdicts.items()))}, disagreements={bad}")


def test_criterion_06_metric_constants():
    start = time.perf_counter()
    cut = distance(d1_partition((1, 2), (0,)), d1_partition((1, 2), (1,))).value
    half = project_pi(Arrangement(2, 2, {(1, 2): hvec(0, 1, 0)}))
    swap = distance(half, half.relabel({1: 2, 2: 1})).value
    totals = {name: total_measure(fixture_partition(name)).value for name in ("ex1", "parl", "y3", "pent")}
    worst_sigma = 0.0
    for name in ("ex1", "parl", "y3", "pent"):
        for C in fixture_partition(name).regions:
            exact = mu_region(C, 2).value
            mc = mu_region(C, 2, method="monte_carlo", samples=1_000_000, seed=2024)
            worst_sigma = max(worst_sigma, abs(mc.value - exact) / mc.stderr)
    elapsed = time.perf_counter() - start
    ok = (
        abs(cut - math.pi / 2) < PI_TOL
        and abs(swap - 4 * math.pi) < PI_TOL
        and all(abs(t - 2 * math.pi) < PI_TOL for t in totals.values())
        and worst_sigma <= 4
        and elapsed < 30
    )
    record(6, ok, f"cut={cut:.12f} swap={swap:.12f} sums=2pi worst MC deviation={worst_sigma:.2f} sigma time={elapsed:.1f}s")


def metric_pool():
    sliver = [project_pi(fixtures.sliver(e), check=e != 0) for e in (1, Fraction(1, 2), Fraction(1, 4), 0)]
    ex1 = project_pi(fixtures.ex1())
    return [
        ex1,
        project_pi(fixtures.ex1(c12=(0, 1, -5))),
        project_pi(fixtures.ex1(c34=(-2, 1, 0))),
        fixture_partition("parl"),
        *sliver,
        ex1.relabel({1: 2, 2: 1, 3: 4, 4: 3}),
        project_pi(fixtures.reflect(fixtures.ex1())),
    ]


def test_criterion_07_metric_axioms():
    pool = metric_pool()
    m = len(pool)
    D = [[distance(pool[a], pool[b]).value for b in range(m)] for a in range(m)]
    violations = 0
    for a, b, c in product(range(m), repeat=3):
        violations += D[a][a] > PI_TOL
        violations += abs(D[a][b] - D[b][a]) > PI_TOL
        violations += D[a][b] > D[a][c] + D[c][b] + PI_TOL
    record(7, violations == 0, f"{m} fixtures, {m ** 3} triples, violations={violations}")


def test_criterion_08_round_trip():
    failures = []
    for name in ("ex1", "parl", "y3", "pent", "one_region"):
        ctx = fixture_ctx(name)
        Q = reconstruct(ctx.P, ctx.N, identity_assignment(ctx.N), ctx=ctx)
        if not partitions_equal(ctx.P, Q):
            failures.append(name)
    ctx = fixture_ctx("ex1")
    for seed in range(20):
        target = project_pi(fixtures.perturbed_ex1(seed))
        X = default_node_system(target, seed=seed).vectors()
        r = check_constraints(ctx.P, ctx.N, X, seed=seed, ctx=ctx)
        if not r.passed:
            failures.append(f"seed {seed}: {r.verdict}")
            continue
        Q = reconstruct(ctx.P, ctx.N, X, ctx=ctx, report=r)
        if not (comb_equiv(ctx.P, Q) and partitions_equal(Q, target)):
            failures.append(f"seed {seed}")
    record(8, not failures, f"identity on 5 fixtures + 20 perturbed EX1 seeds, failures={failures or 0}")


def test_criterion_09_doubled_rejection():
    ctx = fixture_ctx("pent")
    X = fixtures.pent_doubled_assignment(ctx.N)
    verdicts = set()
    counts = set()
    for seed in range(20):
        r = check_constraints(ctx.P, ctx.N, X, seed=seed, ctx=ctx)
        ok = r.conditions_pass
        verdicts.add(r.verdict if ok else "conditions failed")
        counts.add(r.cones_containing_g)
    record(9, verdicts == {"fail (g-condition)"} and counts == {2}, f"20 seeds: verdicts={sorted(verdicts)} counts={sorted(counts)}")


def test_criterion_10_firla_ziegler():
    upper = HomogeneousCone.upper(3)
    parts = []
    ok = True
    for name in ("y3", "ex1", "pent"):
        ctx = fixture_ctx(name)
        cones = partition_cone_family(ctx.P, ctx=ctx)
        res = fz_check(cones, upper)
        tiles = tiling_oracle(cones, 3, samples=10_000, seed=7).tiles
        ok &= res.verdict is True and tiles
        parts.append(f"{name}={res.verdict}/{'tiles' if tiles else 'overlap'}")
    ctx = fixture_ctx("pent")
    res = fz_check(assignment_cone_family(ctx, fixtures.pent_doubled_assignment(ctx.N)), upper)
    ok &= res.verdict is False
    parts.append(f"pent double cover={res.verdict}")
    record(10, ok, "barycentric families: " + " ".join(parts))


def _laws_for(P, poset, ctx, reflected_ctx) -> list[str]:
    broken = []
    for I, f in poset.faces.items():
        for J in poset.below(I):
            g = poset.faces[J]
            if not (cone_contains(f.cone, g.cone) and not cone_contains(g.cone, f.cone)):
                broken.append("strict reversal")
    if is_pointed(P) and not is_essential(P):
        broken.append("pointed => essential")
    if [I for I, f in poset.faces.items() if f.linear] != [poset.minimal_face]:
        broken.append("unique linear face")
    for I, f in poset.faces.items():
        if f.dim >= 1 and not all(is_union_of_faces(poset, s) for s in subfaces(P, I)):
            broken.append("subface union")
    if ctx.PN.euler_characteristic() != 1:
        broken.append("euler characteristic")
    by_flag = defaultdict(set)
    for fr in ctx.frames:
        by_flag[fr.flag].add(ctx.reference[fr.key])
    if any(len(s - {0}) > 1 for s in by_flag.values()):
        broken.append("single sign per flag")
    if reflected_ctx is not None and is_essential(P):
        a, b = ctx.reference, reflected_ctx.reference
        if a.keys() != b.keys() or any(b[k] != -a[k] for k in a):
            broken.append("reflection flip")
    return broken


def test_criterion_11_structural_laws():
    violations = []
    cases = 0
    for seed in range(POOL_SIZE):
        refl = prepare(project_pi(fixtures.reflect(power_arrangement(seed))))
        violations += [(seed, v) for v in _laws_for(pool_partition(seed), pool_poset(seed), pool_ctx(seed), refl)]
        cases += 1
    for name in ("ex1", "parl", "y3", "pent", "one_region"):
        ctx = fixture_ctx(name)
        refl = None if name == "one_region" else prepare(project_pi(fixtures.reflect(fixtures.build(name))))
        violations += [(name, v) for v in _laws_for(ctx.P, ctx.poset, ctx, refl)]
        cases += 1
    one = fixture_ctx("one_region").PN.counts()
    chi = f"{one[0]} - {one[1]} + {one[2]}"
    record(11, not violations, f"{cases} partitions x 7 laws, one-region chi = {chi}, violations={violations or 0}")


def test_criterion_12_compactification():
    limit = project_pi(fixtures.sliver(0), check=False)
    values = [distance(project_pi(fixtures.sliver(Fraction(1, 2 ** k))), limit).value for k in range(7)]
    ok = all(a > b for a, b in zip(values, values[1:])) and values[-1] < 0.02
    record(12, ok, "d(eps) = " + ", ".join(f"{v:.4f}" for v in values))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
