from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convpart.exactgeom import (
    DegenerateConeError,
    HomogeneousCone,
    cone_contains,
    cone_dim,
    cone_equal,
    cone_facets,
    cone_hrep,
    det,
    det_sign,
    dot,
    hvec,
    in_conic_hull,
    lineality_dim,
    nullspace,
    parse_rational,
    positively_spans,
    rank,
    relint_point,
    solve_strict,
    strict_feasible,
)

from _pool import fixture_partition

small = st.integers(-4, 4)


def vec(k):
    return st.tuples(*[small] * k).map(lambda t: tuple(Fraction(x) for x in t))


def leibniz(m):
    """Independent determinant oracle: permutation expansion."""
    n = len(m)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = Fraction(sign)
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(2) == 2
    assert parse_rational("-0.5") == Fraction(-1, 2)


class TestStrictFeasible:
    def test_empty_system(self):
        assert strict_feasible([], 3)

    def test_opposite_pair(self):
        assert not strict_feasible([hvec(1, 0, 0), hvec(-1, 0, 0)], 3)

    def test_ex1_source_one_cell(self):
        rows = [hvec(0, 1, -6), hvec(0, 1, 0), hvec(0, 1, 0), hvec(-1, 0, 0)]
        assert strict_feasible(rows, 3)
        # witness by hand: the lift of (-1, 1)
        x = hvec(1, -1, 1)
        assert all(dot(a, x) < 0 for a in rows)

    def test_witness_is_primitive_and_strict(self):
        rows = [hvec(0, 1, -6), hvec(0, 1, 0), hvec(-1, 0, 0)]
        w = solve_strict(rows, dim=3)
        assert all(dot(a, w) < 0 for a in rows)
        assert all(x.denominator == 1 for x in w)

    @given(st.lists(vec(3), min_size=1, max_size=6), st.data())
    @settings(max_examples=100)
    def test_monotone_under_adding_rows(self, rows, data):
        rows = [r for r in rows if any(r)]
        if not rows:
            return
        extra = data.draw(vec(3))
        if not any(extra):
            return
        if not strict_feasible(rows, 3):
            assert not strict_feasible(rows + [extra], 3)

    @given(st.lists(vec(3), min_size=1, max_size=5))
    @settings(max_examples=100)
    def test_witness_or_grid_refutation(self, rows):
        rows = [r for r in rows if any(r)]
        w = solve_strict(rows, dim=3)
        if w is not None:
            assert all(dot(a, w) < 0 for a in rows)
        else:
            # no grid point satisfies the system either
            grid = itertools.product(range(-3, 4), repeat=3)
            assert not any(all(dot(a, g) < 0 for a in rows) for g in grid)


class TestConeDims:
    def test_whole_space(self):
        C = HomogeneousCone.whole(3)
        assert cone_dim(C) == 3 and lineality_dim(C) == 3

    def test_y3_region_three(self):
        C3 = fixture_partition("y3").region(3)
        assert cone_dim(C3) == 3
        assert lineality_dim(C3) == 1
        # rank oracle: e_0, e_1 and +-e_2 lie in C_3
        for v in (hvec(1, 0, 0), hvec(0, 1, 0), hvec(0, 0, 1), hvec(0, 0, -1)):
            assert C3.contains(v)

    def test_y3_region_one_pointed(self):
        C1 = fixture_partition("y3").region(1)
        assert lineality_dim(C1) == 0
        for v in itertools.product(range(-2, 3), repeat=3):
            if any(v):
                assert not (C1.contains(v) and C1.contains(tuple(-x for x in v)))

    def test_ex1_vertex_123(self):
        P = fixture_partition("ex1")
        C = P.region(1).intersect(P.region(2), P.region(3))
        assert cone_dim(C) == 1

    def test_relint_halfline(self):
        C = HomogeneousCone((hvec(-1, 0, 0),), (hvec(0, 1, 0), hvec(0, 0, 1)), 3)
        p = relint_point(C)
        assert p[0] > 0 and p[1] == 0 and p[2] == 0

    def test_relint_y3_quadrant(self):
        p = relint_point(fixture_partition("y3").region(1))
        assert p[0] > 0 and p[1] < 0 and p[2] > 0

    def test_relint_ex1_wall_12(self):
        P = fixture_partition("ex1")
        p = relint_point(P.region(1).intersect(P.region(2)))
        assert p[0] > 0 and p[1] - 6 * p[2] == 0 and p[1] < 0

    def test_relint_of_point_cone_raises(self):
        C = HomogeneousCone((), (hvec(1, 0, 0), hvec(0, 1, 0), hvec(0, 0, 1)), 3)
        with pytest.raises(DegenerateConeError):
            relint_point(C)

    @given(st.lists(vec(3), min_size=1, max_size=5), st.lists(vec(3), max_size=1))
    @settings(max_examples=100)
    def test_dim_laws_and_relint(self, ineq, eq):
        ineq = [a for a in ineq if any(a)]
        eq = [b for b in eq if any(b)]
        C = HomogeneousCone(tuple(ineq), tuple(eq), 3)
        assert lineality_dim(C) <= cone_dim(C)
        assert cone_dim(C) == 3 - rank(list(C.affine_equalities))
        if cone_dim(C) > 0:
            p = relint_point(C)
            assert C.contains(p)
            implicit = set(C.implicit_indices)
            for k, a in enumerate(C.inequalities):
                if k not in implicit:
                    assert dot(a, p) < 0


class TestDeterminant:
    def test_identity(self):
        assert det_sign([hvec(1, 0, 0), hvec(0, 1, 0), hvec(0, 0, 1)]) == 1

    def test_repeated_column(self):
        assert det_sign([hvec(1, 0, 0), hvec(0, 1, 0), hvec(0, 1, 0)]) == 0

    def test_pent_lifts(self):
        m = [hvec(1, 0, 5), hvec(1, -5, 2), hvec(1, -3, -4)]
        # cofactor expansion by hand: 1*(20 + 6) - 0 + 5*(-3 + 5) = 36
        assert det(m) == 36 and det_sign(m) == 1

    def test_against_leibniz_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(100):
            k = rng.choice((2, 3, 4))
            m = [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(k)) for _ in range(k)]
            ref = leibniz(m)
            assert det(m) == ref
            assert det_sign(m) == (ref > 0) - (ref < 0)


class TestPositivelySpans:
    line = HomogeneousCone((), (hvec(1, 0, 0), hvec(0, 1, 0)), 3)
    plane = HomogeneousCone((), (hvec(1, 0, 0),), 3)

    def test_antipodal_pair(self):
        assert positively_spans([hvec(0, 0, 1), hvec(0, 0, -1)], self.line)

    def test_single_point(self):
        assert not positively_spans([hvec(0, 0, 1)], self.line)

    def test_three_in_plane(self):
        assert positively_spans([hvec(0, 1, 0), hvec(0, 0, 1), hvec(0, -1, -1)], self.plane)

    @given(st.lists(st.tuples(small, small).map(lambda t: hvec(0, *t)), min_size=1, max_size=5))
    @settings(max_examples=100)
    def test_against_brute_force(self, pts):
        pts = [p for p in pts if any(p)]
        if not pts:
            return
        # oracle: positive spanning of the plane iff rank 2 and no open
        # halfplane through the origin contains all points
        full_rank = rank(pts) == 2
        halfplane = any(
            all(dot(hvec(0, a, b), p) >= 0 for p in pts)
            for a in range(-6, 7)
            for b in range(-6, 7)
            if (a, b) != (0, 0)
        )
        expected = full_rank and not halfplane
        assert positively_spans(pts, self.plane) == expected


class TestConeFacets:
    def test_simplicial(self):
        r, facets = cone_facets([hvec(1, 0, 0), hvec(0, 1, 0), hvec(0, 0, 1)])
        assert r == 3 and len(facets) == 3

    def test_pent_region(self):
        r, facets = cone_facets([hvec(1, 0, 0), hvec(0, 0, 5), hvec(0, -5, 2)])
        assert r == 3 and len(facets) == 3

    def test_square(self):
        gens = [hvec(1, 1, 1), hvec(1, -1, 1), hvec(1, -1, -1), hvec(1, 1, -1)]
        r, facets = cone_facets(gens)
        assert r == 3 and len(facets) == 4
        # brute-force oracle: each facet contains exactly two generators
        assert sorted(len(f.generators) for f in facets) == [2, 2, 2, 2]

    def test_degenerate(self):
        r, facets = cone_facets([hvec(1, 0, 0), hvec(2, 0, 0)])
        assert r == 1 and len(facets) == 1

    @given(st.lists(vec(3), min_size=1, max_size=6))
    @settings(max_examples=100)
    def test_hrep_contains_exactly_the_generated_cone(self, gens):
        gens = [g for g in gens if any(g)]
        if not gens:
            return
        C = cone_hrep(gens, 3)
        assert all(C.contains(g) for g in gens)
        for x in itertools.product(range(-2, 3), repeat=3):
            assert C.contains(x) == in_conic_hull(x, gens)


def test_cone_equal_and_contains():
    a = HomogeneousCone((hvec(-1, 0, 0), hvec(0, -1, 0)), (), 3)
    b = HomogeneousCone((hvec(-2, 0, 0), hvec(0, -3, 0), hvec(-1, -1, 0)), (), 3)
    assert cone_equal(a, b)
    smaller = a.intersect(HomogeneousCone((hvec(0, 0, 1),), (), 3))
    assert cone_contains(a, smaller) and not cone_contains(smaller, a)


def test_nullspace_is_orthogonal():
    rows = [hvec(1, 2, 3), hvec(0, 1, 1)]
    ns = nullspace(rows, 3)
    assert len(ns) == 1 and all(dot(r, ns[0]) == 0 for r in rows)
