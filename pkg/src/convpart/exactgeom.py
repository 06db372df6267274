"""Exact rational kernel: vectors, homogeneous cones and strict-feasibility LPs.

Every predicate in the package funnels through :func:`solve_strict`, which
decides whether a homogeneous system of strict inequalities, weak
inequalities and equalities has a solution. The decision is made by an
exact simplex with Bland's pivoting rule. The tableau uses gmpy2 rationals
for speed and converts back to :class:`fractions.Fraction` at the boundary,
so no tolerance appears anywhere in the combinatorics.

Homogeneous vectors are plain tuples of ``Fraction``; coordinate 0 is the
lifting coordinate ``x_0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from gmpy2 import mpq

HVector = tuple[Fraction, ...]


class GeometryError(ValueError):
    """Malformed geometric input (dimension mismatch, zero vector, ...)."""


class DegenerateConeError(GeometryError):
    """Raised when a point is requested from the trivial cone {0}."""


# ---------------------------------------------------------------------------
# rationals and vectors


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GeometryError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"not a rational: {value!r}") from exc
    raise GeometryError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def hvec(*coords) -> HVector:
    """Build an HVector; accepts ints, strings or Fractions."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    return tuple(parse_rational(c) for c in coords)


def unit(dim: int, k: int) -> HVector:
    return tuple(Fraction(int(i == k)) for i in range(dim))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def neg(a: HVector) -> HVector:
    return tuple(-x for x in a)


def add(a: HVector, b: HVector) -> HVector:
    return tuple(x + y for x, y in zip(a, b))


def scale(a: HVector, k) -> HVector:
    return tuple(x * k for x in a)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def primitive(a: HVector) -> HVector:
    """Positive rescaling of ``a`` to a primitive integer vector."""
    if is_zero(a):
        return tuple(Fraction(0) for _ in a)
    den = 1
    for x in a:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(Fraction(v // g) for v in ints)


def projective_key(a: HVector) -> HVector:
    """Canonical representative of the ray through ``a``."""
    return primitive(a)


def line_key(a: HVector) -> HVector:
    """Canonical representative of the line through ``a`` (sign forgotten)."""
    p = primitive(a)
    for x in p:
        if x != 0:
            return p if x > 0 else neg(p)
    return p


def same_ray(a: HVector, b: HVector) -> bool:
    return projective_key(a) == projective_key(b)


def _check_dims(vectors: Iterable[Sequence], dim: int) -> None:
    for v in vectors:
        if len(v) != dim:
            raise GeometryError(f"vector {tuple(map(str, v))} has length {len(v)}, expected {dim}")


# ---------------------------------------------------------------------------
# linear algebra


def row_reduce(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(vectors)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], dim: int) -> list[HVector]:
    """Basis of {x in Q^dim : r.x = 0 for every row r}, deterministic."""
    if not rows:
        return [unit(dim, k) for k in range(dim)]
    red, pivots = row_reduce(rows)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * dim
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(primitive(tuple(v)))
    return basis


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` (free variables at 0), or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def _bareiss_sign(mat: list[list[int]]) -> int:
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    last = m[n - 1][n - 1]
    return sign * (last > 0) - sign * (last < 0)


def det_sign(vectors: Sequence[HVector]) -> int:
    """Exact sign of det(v_0, ..., v_d) with the vectors as columns."""
    n = len(vectors)
    _check_dims(vectors, n)
    if n == 0:
        return 1
    # Positive rescaling of each column leaves the sign alone.
    cols = [[int(x) for x in primitive(tuple(v))] for v in vectors]
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return _bareiss_sign(mat)


def det(vectors: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination (columns = vectors)."""
    n = len(vectors)
    m = [[Fraction(vectors[j][i]) for j in range(n)] for i in range(n)]
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            result = -result
        result *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return result


# ---------------------------------------------------------------------------
# exact simplex


def _maximize(c: list, a: list[list], b: list) -> tuple[Fraction, list[Fraction]]:
    """max c.z s.t. a z <= b, z >= 0, with b >= 0 (origin feasible).

    Dense tableau, Bland's rule, pivoting in gmpy2 rationals. The objective
    must be bounded; callers guarantee this by bounding it explicitly.
    """
    m, n = len(a), len(c)
    zero, one = mpq(0), mpq(1)
    tab = [[mpq(x) for x in row] + [one if i == k else zero for k in range(m)] + [mpq(bi)] for i, (row, bi) in enumerate(zip(a, b))]
    obj = [-mpq(x) for x in c] + [zero] * (m + 1)
    basis = list(range(n, n + m))
    width = n + m
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                key = (tab[i][-1] / coef, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise ArithmeticError("unbounded objective in bounded LP")
        r = best[1]
        piv = tab[r][enter]
        if piv != 1:
            tab[r] = [x / piv for x in tab[r]]
        pivot_row = tab[r]
        nz = [j for j, y in enumerate(pivot_row) if y]
        for i in range(m):
            if i != r:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    for j in nz:
                        row[j] -= f * pivot_row[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * pivot_row[j]
        basis[r] = enter
    z = [zero] * width
    for i, bv in enumerate(basis):
        z[bv] = tab[i][-1]
    return _frac(obj[-1]), [_frac(v) for v in z[:n]]


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@lru_cache(maxsize=65536)
def _int_row(v: tuple) -> tuple[int, ...]:
    """Primitive integer row on the same ray (zero rows stay zero)."""
    den = 1
    for x in v:
        q = x.denominator if isinstance(x, Fraction) else 1
        den = den * q // math.gcd(den, q)
    ints = [int(x * den) for x in v]
    g = 0
    for t in ints:
        g = math.gcd(g, t)
    return tuple(t // g for t in ints) if g > 1 else tuple(ints)


def _dedupe_int(rows: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    seen: dict[tuple[int, ...], None] = {}
    for r in rows:
        if any(r):
            g = 0
            for t in r:
                g = math.gcd(g, t)
            seen.setdefault(tuple(t // g for t in r) if g > 1 else r, None)
    return list(seen)


def solve_strict(
    strict: Sequence[Sequence[Fraction]],
    weak: Sequence[Sequence[Fraction]] = (),
    eq: Sequence[Sequence[Fraction]] = (),
    dim: int | None = None,
) -> HVector | None:
    """Find x with a.x < 0 (strict), a.x <= 0 (weak), b.x = 0 (eq).

    Returns a primitive integer witness or None when the system is
    infeasible. With no strict rows the zero vector is returned.
    """
    if dim is None:
        for group in (strict, weak, eq):
            if group:
                dim = len(group[0])
                break
        else:
            raise GeometryError("dimension required for an empty system")
    _check_dims(strict, dim)
    _check_dims(weak, dim)
    _check_dims(eq, dim)
    if not strict:
        return tuple(Fraction(0) for _ in range(dim))
    s_int = [_int_row(tuple(r)) for r in strict]
    w_int = [_int_row(tuple(r)) for r in weak]
    if eq:
        # restrict to the solution space of the equalities
        basis = [_int_row(b) for b in nullspace(eq, dim)]
        if not basis:
            return None

        def proj(row):
            return tuple(sum(r * bv for r, bv in zip(row, b)) for b in basis)

        s_int = [proj(r) for r in s_int]
        w_int = [proj(r) for r in w_int]
    else:
        basis = None
    if any(not any(r) for r in s_int):
        return None
    s_rows = _dedupe_int(s_int)
    s_keys = set(s_rows)
    w_rows = [r for r in _dedupe_int(w_int) if r not in s_keys]
    k = len(s_rows[0])
    # variables: y+ (k), y- (k), t ; maximize t
    a: list[list[int]] = []
    bvec: list[int] = []
    for r in s_rows:
        a.append(list(r) + [-x for x in r] + [1])
        bvec.append(0)
    for r in w_rows:
        a.append(list(r) + [-x for x in r] + [0])
        bvec.append(0)
    a.append([0] * (2 * k) + [1])
    bvec.append(1)
    c = [0] * (2 * k) + [1]
    value, z = _maximize(c, a, bvec)
    if value <= 0:
        return None
    y = [z[i] - z[k + i] for i in range(k)]
    if basis is None:
        return primitive(tuple(y))
    x = tuple(sum((y[i] * basis[i][j] for i in range(k)), Fraction(0)) for j in range(dim))
    return primitive(x)


def strict_feasible(normals: Sequence[HVector], ambient_dim: int) -> bool:
    """True iff some x satisfies a.x < 0 for every normal a."""
    _check_dims(normals, ambient_dim)
    if not normals:
        return True
    return solve_strict(normals, dim=ambient_dim) is not None


# ---------------------------------------------------------------------------
# homogeneous cones


@dataclass(frozen=True)
class HomogeneousCone:
    """{x : a.x <= 0 for a in inequalities, b.x = 0 for b in equalities}.

    ``empty=True`` marks the empty set (used for empty regions of
    non-proper partitions); it is distinct from the trivial cone {0}.
    """

    inequalities: tuple[HVector, ...]
    equalities: tuple[HVector, ...] = ()
    ambient_dim: int = 0
    empty: bool = False
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ineqs = tuple(tuple(parse_rational(x) for x in a) for a in self.inequalities)
        eqs = tuple(tuple(parse_rational(x) for x in b) for b in self.equalities)
        object.__setattr__(self, "inequalities", ineqs)
        object.__setattr__(self, "equalities", eqs)
        if not self.ambient_dim:
            for group in (ineqs, eqs):
                if group:
                    object.__setattr__(self, "ambient_dim", len(group[0]))
                    break
            else:
                raise GeometryError("ambient_dim required for an unconstrained cone")
        _check_dims(ineqs, self.ambient_dim)
        _check_dims(eqs, self.ambient_dim)

    @classmethod
    def whole(cls, dim: int) -> HomogeneousCone:
        return cls((), (), dim)

    @classmethod
    def empty_set(cls, dim: int) -> HomogeneousCone:
        return cls((), (), dim, empty=True)

    @classmethod
    def upper(cls, dim: int) -> HomogeneousCone:
        """The closed upper halfspace x_0 >= 0."""
        return cls((neg(unit(dim, 0)),), (), dim)

    @classmethod
    def lower(cls, dim: int) -> HomogeneousCone:
        return cls((unit(dim, 0),), (), dim)

    def intersect(self, *others: HomogeneousCone) -> HomogeneousCone:
        ineqs = list(self.inequalities)
        eqs = list(self.equalities)
        empty = self.empty
        for o in others:
            if o.ambient_dim != self.ambient_dim:
                raise GeometryError("ambient dimension mismatch")
            ineqs += o.inequalities
            eqs += o.equalities
            empty = empty or o.empty
        return HomogeneousCone(tuple(ineqs), tuple(eqs), self.ambient_dim, empty)

    def with_equalities(self, *rows: HVector) -> HomogeneousCone:
        return HomogeneousCone(self.inequalities, self.equalities + tuple(rows), self.ambient_dim, self.empty)

    def contains(self, x: Sequence[Fraction]) -> bool:
        if self.empty:
            return False
        return all(dot(a, x) <= 0 for a in self.inequalities) and all(dot(b, x) == 0 for b in self.equalities)

    def contains_in_relint(self, x: Sequence[Fraction]) -> bool:
        if not self.contains(x):
            return False
        implicit = set(self.implicit_indices)
        return all(dot(a, x) < 0 for i, a in enumerate(self.inequalities) if i not in implicit)

    # -- derived quantities (cached; the object is immutable) --------------

    @cached_property
    def implicit_indices(self) -> tuple[int, ...]:
        """Indices of inequalities that hold with equality on the whole cone."""
        if self.empty:
            return tuple(range(len(self.inequalities)))
        out = []
        self._cache["witness"] = {}
        if self.inequalities:
            # common case: one point satisfies every inequality strictly
            w = solve_strict(self.inequalities, (), self.equalities, self.ambient_dim)
            if w is not None:
                self._cache["witness"] = {i: w for i in range(len(self.inequalities))}
                return ()
        for i, a in enumerate(self.inequalities):
            others = [b for j, b in enumerate(self.inequalities) if j != i]
            w = solve_strict([a], others, self.equalities, self.ambient_dim)
            if w is None:
                out.append(i)
            else:
                self._cache["witness"][i] = w
        return tuple(out)

    @cached_property
    def affine_equalities(self) -> tuple[HVector, ...]:
        """Equalities plus implicit inequalities: the linear hull's equations."""
        imp = self.implicit_indices
        return self.equalities + tuple(self.inequalities[i] for i in imp)

    @cached_property
    def dim(self) -> int:
        if self.empty:
            return -1
        return self.ambient_dim - rank(self.affine_equalities) if self.affine_equalities else self.ambient_dim

    @cached_property
    def lineality_dim(self) -> int:
        if self.empty:
            return -1
        rows = self.inequalities + self.equalities
        return self.ambient_dim - rank(rows) if rows else self.ambient_dim

    @property
    def is_linear(self) -> bool:
        return not self.empty and self.dim == self.lineality_dim

    @property
    def is_pointed(self) -> bool:
        return not self.empty and self.lineality_dim == 0

    @cached_property
    def relint_point(self) -> HVector:
        if self.empty or self.dim <= 0:
            raise DegenerateConeError("cone has no nonzero relative-interior point")
        imp = set(self.implicit_indices)
        witnesses = self._cache.get("witness", {})
        total = tuple(Fraction(0) for _ in range(self.ambient_dim))
        for i in range(len(self.inequalities)):
            if i not in imp:
                total = add(total, witnesses[i])
        if is_zero(total):
            # linear subspace: any nonzero vector of it is relative-interior
            return nullspace(self.affine_equalities, self.ambient_dim)[0]
        return primitive(total)

    def nonimplicit_witnesses(self) -> dict[int, HVector]:
        self.implicit_indices  # noqa: B018 - fills the witness cache
        return dict(self._cache.get("witness", {}))

    @cached_property
    def facet_indices(self) -> tuple[int, ...]:
        """One inequality index per facet (irredundant, first occurrence)."""
        if self.empty or self.dim <= 0:
            return ()
        imp = set(self.implicit_indices)
        seen: list[HomogeneousCone] = []
        out = []
        for i, a in enumerate(self.inequalities):
            if i in imp:
                continue
            face = self.with_equalities(a)
            if face.dim != self.dim - 1:
                continue
            if any(cone_equal(face, s) for s in seen):
                continue
            seen.append(face)
            out.append(i)
        return tuple(out)

    def __hash__(self):
        return hash((self.inequalities, self.equalities, self.ambient_dim, self.empty))


def cone_dim(c: HomogeneousCone) -> int:
    return c.dim


def lineality_dim(c: HomogeneousCone) -> int:
    return c.lineality_dim


def relint_point(c: HomogeneousCone) -> HVector:
    return c.relint_point


def cone_contains(outer: HomogeneousCone, inner: HomogeneousCone) -> bool:
    """inner is a subset of outer (exact)."""
    if inner.empty:
        return True
    if outer.empty:
        return False
    for a in outer.inequalities:
        if solve_strict([neg(a)], inner.inequalities, inner.equalities, inner.ambient_dim) is not None:
            return False
    for b in outer.equalities:
        for s in (b, neg(b)):
            if solve_strict([s], inner.inequalities, inner.equalities, inner.ambient_dim) is not None:
                return False
    return True


def cone_equal(a: HomogeneousCone, b: HomogeneousCone) -> bool:
    return cone_contains(a, b) and cone_contains(b, a)


def relints_meet(a: HomogeneousCone, b: HomogeneousCone) -> bool:
    """True iff relint(a) meets b."""
    if a.empty or b.empty:
        return False
    imp = set(a.implicit_indices)
    strict = [x for i, x in enumerate(a.inequalities) if i not in imp]
    if not strict:
        if a.dim == 0:
            return False
        # a is linear; need a nonzero common point
        lin = a.intersect(b)
        return lin.dim > 0
    return solve_strict(strict, b.inequalities, a.affine_equalities + b.equalities, a.ambient_dim) is not None


# ---------------------------------------------------------------------------
# generator (V-) descriptions


def in_conic_hull(x: HVector, generators: Sequence[HVector], interior: bool = False) -> bool:
    """x in cone(generators); with ``interior`` the relative interior.

    The relative interior of a finitely generated cone is the set of
    strictly positive combinations of its generators.
    """
    dim = len(x)
    if not generators:
        return not interior and is_zero(x)
    m = len(generators)
    # variables (lambda_1..lambda_m, mu), sum lambda_i g_i - mu x = 0
    eq = [tuple([g[k] for g in generators] + [-x[k]]) for k in range(dim)]
    lam = [tuple(Fraction(-int(i == j)) for j in range(m + 1)) for i in range(m)]
    mu = tuple(Fraction(-int(j == m)) for j in range(m + 1))
    if interior:
        return solve_strict(lam + [mu], (), eq, m + 1) is not None
    if is_zero(x):
        return True
    return solve_strict([mu], lam, eq, m + 1) is not None


def positively_spans(points: Sequence[HVector], space: HomogeneousCone) -> bool:
    """True iff the conic hull of ``points`` is the linear subspace ``space``."""
    for p in points:
        if not space.contains(p):
            raise GeometryError(f"point {tuple(map(str, p))} lies outside the subspace")
    if not points:
        return space.dim == 0
    if rank(points) != space.dim:
        return False
    m = len(points)
    dim = space.ambient_dim
    eq = [tuple(p[k] for p in points) for k in range(dim)]
    lam = [tuple(Fraction(-int(i == j)) for j in range(m)) for i in range(m)]
    return solve_strict(lam, (), eq, m) is not None


@dataclass(frozen=True)
class Facet:
    normal: HVector  # outward: a.x <= 0 on the cone, = 0 on the facet
    generators: tuple[int, ...]  # indices of generators lying on the facet


def cone_facets(generators: Sequence[HVector]) -> tuple[int, list[Facet]]:
    """Dimension and facets of cone(generators), within its linear span.

    Facets are found by enumerating (r-1)-subsets of generators that span a
    hyperplane of the span with all generators weakly on one side.
    """
    allg = [tuple(parse_rational(x) for x in g) for g in generators]
    idx = [i for i, g in enumerate(allg) if not is_zero(g)]
    gens = [allg[i] for i in idx]
    if not gens:
        return 0, []
    dim = len(gens[0])
    r = rank(gens)
    complement = nullspace(gens, dim)
    facets: dict[HVector, Facet] = {}
    for subset in combinations(range(len(gens)), r - 1):
        sub = [gens[i] for i in subset]
        if sub and rank(sub) != r - 1:
            continue
        ns = nullspace(sub + complement, dim) if (sub or complement) else [unit(dim, k) for k in range(dim)]
        if len(ns) != 1:
            continue
        a = ns[0]
        vals = [dot(a, g) for g in gens]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            a = neg(a)
            vals = [-v for v in vals]
        else:
            continue
        key = projective_key(a)
        if key not in facets:
            on = tuple(idx[i] for i, v in enumerate(vals) if v == 0)
            facets[key] = Facet(key, on)
    return r, [facets[k] for k in sorted(facets)]


def cone_hrep(generators: Sequence[HVector], dim: int | None = None) -> HomogeneousCone:
    """Inequality description of cone(generators)."""
    gens = [tuple(parse_rational(x) for x in g) for g in generators]
    gens = [g for g in gens if not is_zero(g)]
    if dim is None:
        if not generators:
            raise GeometryError("dimension required for an empty generator list")
        dim = len(generators[0])
    if not gens:
        return HomogeneousCone((), tuple(unit(dim, k) for k in range(dim)), dim)
    _, facets = cone_facets(gens)
    complement = nullspace(gens, dim)
    return HomogeneousCone(tuple(f.normal for f in facets), tuple(complement), dim)


def cone_rays(c: HomogeneousCone) -> list[HVector]:
    """Extreme rays of a pointed cone (primitive, sorted)."""
    if c.empty or c.dim == 0:
        return []
    if c.lineality_dim != 0:
        raise GeometryError("cone_rays requires a pointed cone")
    d = c.ambient_dim
    rows = list(c.inequalities)
    eqs = list(c.equalities)
    target = d - 1
    found: set[HVector] = set()
    for subset in combinations(range(len(rows)), max(0, c.dim - 1)):
        sys_rows = eqs + [rows[i] for i in subset] + list(c.affine_equalities)
        ns = nullspace(sys_rows, d)
        if len(ns) != 1:
            continue
        for cand in (ns[0], neg(ns[0])):
            if c.contains(cand):
                found.add(projective_key(cand))
    del target
    return sorted(found)
