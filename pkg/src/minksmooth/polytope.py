"""Lattice polytopes, Minkowski decompositions, support data, admissibility.

A :class:`LatticePolytope` stores only its minimal vertex set, sorted
lexicographically; that ordering is the canonical one used everywhere
downstream (summand matrices, regions, monodromies), so golden values stay
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product

from .cone import cone_from_generators
from .exactlin import (
    IntMat,
    IntVec,
    as_mat,
    as_vec,
    complete_to_basis,
    dot,
    is_zero_vec,
    mat_mul,
    snf_invariant_factors,
    unimodular_inverse,
    vec_neg,
)


class DimensionMismatch(ValueError):
    pass


class OriginNotVertex(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: IntMat  # minimal vertex set, lexicographically sorted

    def __post_init__(self):
        if any(len(v) != self.ambient_dim for v in self.vertices):
            raise DimensionMismatch("vertex dimension mismatch")

    @property
    def origin_is_vertex(self) -> bool:
        return any(is_zero_vec(v) for v in self.vertices)

    def nonzero_vertices(self) -> IntMat:
        return tuple(v for v in self.vertices if not is_zero_vec(v))


def convex_hull(points) -> LatticePolytope:
    """Hull with a minimal vertex set, via the cone over the points."""
    pts = as_mat(points)
    if not pts:
        raise ValueError("need at least one point")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    dedup = sorted(set(pts))
    if len(dedup) == 1:
        return LatticePolytope(dim, (dedup[0],))
    cone = cone_from_generators([p + (1,) for p in dedup], dim + 1)
    verts = tuple(sorted(r[:-1] for r in cone.generators))
    return LatticePolytope(dim, verts)


def minkowski_sum(a: LatticePolytope, b: LatticePolytope) -> LatticePolytope:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("summands live in different dimensions")
    sums = [tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices]
    return convex_hull(sums)


def lattice_points(p: LatticePolytope) -> list[IntVec]:
    """All integer points of the hull: bounding-box scan with exact facet tests."""
    cone = cone_from_generators([v + (1,) for v in p.vertices], p.ambient_dim + 1)
    facets = cone.inequalities
    lo = [min(v[j] for v in p.vertices) for j in range(p.ambient_dim)]
    hi = [max(v[j] for v in p.vertices) for j in range(p.ambient_dim)]
    out = []
    for pt in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(dot(f, pt + (1,)) >= 0 for f in facets):
            out.append(pt)
    return out


def eta0(q: LatticePolytope, c) -> int:
    """max over vertices v of <c, -v>; the boundary height of the dual cone."""
    c = as_vec(c)
    if len(c) != q.ambient_dim:
        raise DimensionMismatch("functional dimension mismatch")
    return max(dot(c, vec_neg(v)) for v in q.vertices)


@dataclass(frozen=True)
class MinkowskiDecomposition:
    summands: tuple[LatticePolytope, ...]
    target: LatticePolytope

    @property
    def n(self) -> int:
        return self.target.ambient_dim

    @property
    def k(self) -> int:
        return len(self.summands)


def decomposition(summands, target=None) -> MinkowskiDecomposition:
    """Build a decomposition, checking the Minkowski sum against the target."""
    summands = tuple(summands)
    if not summands:
        raise ValueError("need at least one summand")
    dims = {s.ambient_dim for s in summands}
    if len(dims) != 1:
        raise DimensionMismatch("summands live in different dimensions")
    for i, s in enumerate(summands):
        if not s.origin_is_vertex:
            raise OriginNotVertex(f"summand {i + 1} does not have the origin as a vertex")
    total = reduce(minkowski_sum, summands)
    if target is not None and target != total:
        raise ValueError("target polytope is not the Minkowski sum of the summands")
    return MinkowskiDecomposition(summands, total)


def phi(d: MinkowskiDecomposition, v) -> IntVec:
    """Per-summand support values: component i is max over M_i of <v, -vertex>."""
    v = as_vec(v)
    if len(v) != d.n:
        raise DimensionMismatch("vector dimension mismatch")
    return tuple(max(dot(v, vec_neg(w)) for w in s.vertices) for s in d.summands)


@dataclass(frozen=True)
class SummandMatrices:
    """The matrix package attached to one summand.

    ``v`` has the nonzero vertices as rows (m x n), ``e`` completes them to a
    lattice basis, and ``(a, c)`` is the integer inverse of ``[v; e]`` split
    into its first m and last n-m columns, so that v*a = Id, v*c = 0,
    e*a = 0, e*c = Id.  ``b`` is minus the sum of the columns of ``a``.
    """

    v: IntMat
    e: IntMat
    a: IntMat  # n x m
    c: IntMat  # n x (n - m)
    b: IntVec

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def n(self) -> int:
        return len(self.b)

    def a_column(self, j) -> IntVec:
        return tuple(row[j] for row in self.a)

    def c_column(self, l) -> IntVec:
        return tuple(row[l] for row in self.c)


def summand_matrices(mi: LatticePolytope) -> SummandMatrices:
    if not mi.origin_is_vertex:
        raise OriginNotVertex("summand must contain the origin as a vertex")
    n = mi.ambient_dim
    v = mi.nonzero_vertices()
    m = len(v)
    if m == 0:
        # the point {0}: empty vertex system, everything degenerates cleanly
        e = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        a = tuple(() for _ in range(n))
        return SummandMatrices((), e, a, e, tuple([0] * n))
    if m > n or any(f != 1 for f in snf_invariant_factors(v)):
        from .exactlin import NotPrimitive

        raise NotPrimitive("nonzero vertices do not extend to a lattice basis")
    e = complete_to_basis(v)
    x = v + e
    z = unimodular_inverse(x)
    a = tuple(row[:m] for row in z)
    c = tuple(row[m:] for row in z)
    b = tuple(-sum(row) for row in a)
    return SummandMatrices(v, e, a, c, b)


@dataclass(frozen=True)
class AdmissibilityResult:
    ok: bool
    matrices: tuple[SummandMatrices, ...] | None
    violations: tuple[str, ...]


def is_admissible(d: MinkowskiDecomposition) -> AdmissibilityResult:
    """Check the per-summand gate: origin vertex, independent primitive vertices."""
    violations = []
    matrices = []
    for i, s in enumerate(d.summands, start=1):
        if not s.origin_is_vertex:
            violations.append(f"summand {i}: origin is not a vertex")
            continue
        nz = s.nonzero_vertices()
        if not nz:
            if d.k < 2:
                violations.append(f"summand {i}: degenerate point summand needs k >= 2")
            else:
                matrices.append(summand_matrices(s))
            continue
        if len(nz) > s.ambient_dim:
            violations.append(f"summand {i}: nonzero vertices are not linearly independent")
            continue
        if any(f != 1 for f in snf_invariant_factors(nz)):
            violations.append(f"summand {i}: nonzero vertices are not a primitive system")
            continue
        matrices.append(summand_matrices(s))
    if violations:
        return AdmissibilityResult(False, None, tuple(violations))
    return AdmissibilityResult(True, tuple(matrices), ())


def require_admissible(d: MinkowskiDecomposition) -> tuple[SummandMatrices, ...]:
    res = is_admissible(d)
    if not res.ok:
        raise NotAdmissible("; ".join(res.violations))
    return res.matrices


def is_full_dimensional_polytope(p: LatticePolytope) -> bool:
    v0 = p.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, v0)) for v in p.vertices[1:]]
    from .exactlin import rank

    return rank(diffs) == p.ambient_dim


def verify_matrix_relations(sm: SummandMatrices) -> bool:
    """The defining identities: v*a = Id, v*c = 0, e*a = 0, e*c = Id."""
    m, n = sm.m, sm.n
    ident = lambda s: tuple(tuple(1 if i == j else 0 for j in range(s)) for i in range(s))
    zero = lambda r, s: tuple(tuple(0 for _ in range(s)) for _ in range(r))
    checks = [
        mat_mul(sm.v, sm.a) == ident(m) if m else True,
        mat_mul(sm.v, sm.c) == zero(m, n - m) if m and n > m else True,
        mat_mul(sm.e, sm.a) == zero(n - m, m) if m and n > m else True,
        mat_mul(sm.e, sm.c) == ident(n - m) if n > m else True,
    ]
    if sm.a and sm.a[0]:
        checks.append(sm.b == tuple(-sum(row) for row in sm.a))
    return all(checks)
