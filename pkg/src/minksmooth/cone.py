"""Rational polyhedral cones: duality, Hilbert bases, semigroup membership.

The workhorse is :func:`halfspace_description`, a double description pass
that turns a list of inequality normals into the extreme rays (plus a
lineality basis) of the cone they cut out, all in exact integer arithmetic.
Both directions of cone duality reduce to that single routine, since the
facet normals of ``Cone(G)`` are exactly the extreme rays of
``{y : <g, y> >= 0 for g in G}``.

Insertion keeps the ray set minimal after every inequality: candidate rays
are generated from all positive/negative pairs and then pruned by the rank
test (a ray of a cone with lineality dimension l in R^d is extreme iff its
tight inequality normals have rank d - l - 1).  With pruning in place the
pair-combination step needs no adjacency bookkeeping to stay correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .exactlin import (
    IntMat,
    IntVec,
    as_mat,
    as_vec,
    dot,
    is_zero_vec,
    primitive,
    rank,
    sign_normalized,
    vec_neg,
    vec_sub,
)


class NotPointed(ValueError):
    """Cone has a nontrivial lineality space."""


class NotFullDim(ValueError):
    """Cone does not span its ambient space."""


class BoundTooSmall(RuntimeError):
    """Search depth exhausted before membership could be decided."""


def halfspace_description(ineqs, dim) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality basis of ``{x : <a, x> >= 0 for a in ineqs}``.

    Returns ``(lineality, rays)``, both primitive; the lineality vectors are
    sign-normalized, rays keep their direction.
    """
    lin = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[IntVec] = []
    seen: list[IntVec] = []
    for a in ineqs:
        a = as_vec(a)
        if is_zero_vec(a):
            continue
        vals = [dot(a, l) for l in lin]
        if any(v != 0 for v in vals):
            i0 = next(i for i, v in enumerate(vals) if v != 0)
            l0 = lin[i0] if vals[i0] > 0 else vec_neg(lin[i0])
            v0 = abs(vals[i0])

            def project(x):
                # scaled projection onto the hyperplane of `a` along l0
                return vec_sub(tuple(v0 * t for t in x), tuple(dot(a, x) * t for t in l0))

            lin = [primitive(project(l)) for i, l in enumerate(lin) if i != i0]
            rays = [primitive(p) for p in map(project, rays) if not is_zero_vec(p)]
            rays.append(l0)
        else:
            pos = [r for r in rays if dot(a, r) > 0]
            zero = [r for r in rays if dot(a, r) == 0]
            neg = [r for r in rays if dot(a, r) < 0]
            if neg:
                combos = []
                for p, q in product(pos, neg):
                    w = vec_sub(tuple(dot(a, p) * x for x in q), tuple(dot(a, q) * x for x in p))
                    if not is_zero_vec(w):
                        combos.append(primitive(w))
                rays = pos + zero + combos
        seen.append(a)
        rays = _prune_extreme(rays, seen, dim, len(lin))
    rays = sorted(set(rays))
    lin = sorted(set(sign_normalized(l) for l in lin))
    return lin, rays


def _prune_extreme(rays, ineqs, dim, lin_dim):
    target = dim - lin_dim - 1
    kept = []
    seen = set()
    for r in rays:
        if r in seen:
            continue
        seen.add(r)
        tight = [a for a in ineqs if dot(a, r) == 0]
        if rank(tight) == target:
            kept.append(r)
    return kept


@dataclass(frozen=True)
class PolyhedralCone:
    """A rational polyhedral cone in canonical dual form.

    ``generators`` are the primitive extreme rays (plus a +-pair for each
    lineality direction when the cone is not pointed), sorted.
    ``inequalities`` are the primitive facet normals in the same canonical
    form; membership is `all(<a, x> >= 0)` over them, with equality pairs
    encoding lower-dimensional cones.
    """

    ambient_dim: int
    generators: IntMat
    inequalities: IntMat

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return all(dot(a, v) >= 0 for a in self.inequalities)

    def contains_strictly(self, v) -> bool:
        """Interior membership (every inequality strict)."""
        return all(dot(a, v) > 0 for a in self.inequalities)


def _canonical_vrep(lin, rays) -> IntMat:
    gens = set(rays)
    for l in lin:
        gens.add(l)
        gens.add(vec_neg(l))
    return tuple(sorted(gens))


def cone_from_generators(gens, dim) -> PolyhedralCone:
    gens = as_mat(gens)
    if any(len(g) != dim for g in gens):
        raise ValueError("generator dimension mismatch")
    lin_d, rays_d = halfspace_description(gens, dim)
    ineqs = _canonical_vrep(lin_d, rays_d)
    lin_p, rays_p = halfspace_description(ineqs, dim)
    return PolyhedralCone(dim, _canonical_vrep(lin_p, rays_p), ineqs)


def cone_from_inequalities(ineqs, dim) -> PolyhedralCone:
    ineqs = as_mat(ineqs)
    lin_p, rays_p = halfspace_description(ineqs, dim)
    gens = _canonical_vrep(lin_p, rays_p)
    lin_d, rays_d = halfspace_description(gens, dim)
    return PolyhedralCone(dim, gens, _canonical_vrep(lin_d, rays_d))


def cone_over(q) -> PolyhedralCone:
    """Cone in one higher dimension on the generators ``(v, 1)``."""
    return cone_from_generators([v + (1,) for v in q.vertices], q.ambient_dim + 1)


@lru_cache(maxsize=256)
def sigma_tilde(d) -> PolyhedralCone:
    """Cone on the lattice points of each summand tagged by its basis slot.

    Needs the target to span its ambient space: otherwise the lifted cone is
    not full-dimensional, its dual is not pointed, and no Hilbert basis (or
    anything downstream of it) exists.
    """
    from .polytope import (
        NotAdmissible,
        is_admissible,
        is_full_dimensional_polytope,
        lattice_points,
    )

    res = is_admissible(d)
    if not res.ok:
        raise NotAdmissible("; ".join(res.violations))
    if not is_full_dimensional_polytope(d.target):
        raise NotAdmissible(
            "target polytope is not full-dimensional in its ambient space;"
            " restate the input in the dimension it actually spans"
        )
    k = len(d.summands)
    gens = []
    for i, s in enumerate(d.summands):
        tag = tuple(1 if j == i else 0 for j in range(k))
        for pt in lattice_points(s):
            gens.append(pt + tag)
    return cone_from_generators(gens, d.target.ambient_dim + k)


@lru_cache(maxsize=512)
def dual(c: PolyhedralCone) -> PolyhedralCone:
    return cone_from_generators(c.inequalities, c.ambient_dim)


def is_strongly_convex(c: PolyhedralCone) -> bool:
    return rank(c.inequalities) == c.ambient_dim


def is_full_dimensional(c: PolyhedralCone) -> bool:
    return rank(c.generators) == c.ambient_dim


def cones_equal(a: PolyhedralCone, b: PolyhedralCone) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


def polytope_vertices_from_inequalities(rows, dim) -> list[tuple[Fraction, ...]]:
    """Vertices of the bounded polyhedron ``{x : <a, x> + c >= 0}``.

    ``rows`` are ``(a, c)`` packed as vectors of length ``dim + 1``.  The
    polyhedron is homogenized to a cone in one higher dimension; rays with a
    positive last coordinate dehomogenize to vertices.  A ray at height zero
    means the input was unbounded, which callers here never produce.
    """
    hom = list(rows) + [tuple([0] * dim + [1])]
    lin, rays = halfspace_description(hom, dim + 1)
    if lin:
        raise ValueError("input region has a lineality direction")
    verts = []
    for r in rays:
        if r[-1] == 0:
            raise ValueError("input region is unbounded")
        verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
    return verts


def _box_lattice_scan(verts, keep):
    """Integer points of the bounding box of ``verts`` that satisfy ``keep``."""
    if not verts:
        return []
    dim = len(verts[0])
    lo = []
    hi = []
    for j in range(dim):
        coords = [v[j] for v in verts]
        lo.append(int(min(coords).__floor__()))
        hi.append(int(max(coords).__ceil__()))
    out = []
    for pt in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if keep(pt):
            out.append(pt)
    return out


@dataclass(frozen=True)
class HilbertBasisResult:
    elements: IntMat
    cone: PolyhedralCone


@lru_cache(maxsize=256)
def hilbert_basis(c: PolyhedralCone) -> HilbertBasisResult:
    """Minimal generating set of the semigroup ``c intersect Z^d``.

    Gordan-style construction: every irreducible element lies in the zonotope
    of the primitive extreme rays, which in turn lies inside the order
    interval ``c intersect (sum_of_rays - c)``.  The lattice points of that
    interval generate the semigroup, so discarding the reducible ones leaves
    exactly the Hilbert basis.
    """
    d = c.ambient_dim
    if not is_strongly_convex(c):
        raise NotPointed("Hilbert basis needs a pointed cone")
    if not is_full_dimensional(c):
        raise NotFullDim("Hilbert basis needs a full-dimensional cone")
    rays = c.generators
    total = tuple(sum(col) for col in zip(*rays))
    rows = [a + (0,) for a in c.inequalities]
    rows += [vec_neg(a) + (dot(a, total),) for a in c.inequalities]
    verts = polytope_vertices_from_inequalities(rows, d)

    def inside(pt):
        return c.contains(pt) and c.contains(vec_sub(total, pt))

    candidates = [p for p in _box_lattice_scan(verts, inside) if not is_zero_vec(p)]
    candidates = sorted(set(candidates) | set(rays))
    # reducibility via precomputed facet values: h - g lies in the cone iff
    # the value vector of g is componentwise below that of h; their sum (the
    # positive functional) strictly increases, so only earlier entries in
    # functional order can witness a split
    vals = {p: tuple(dot(a, p) for a in c.inequalities) for p in candidates}
    ordered = sorted(candidates, key=lambda p: (sum(vals[p]), p))
    basis = []
    for idx, h in enumerate(ordered):
        vh = vals[h]
        reducible = False
        for g in ordered[:idx]:
            vg = vals[g]
            if all(x <= y for x, y in zip(vg, vh)):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    return HilbertBasisResult(tuple(sorted(basis)), c)


def lattice_points_in_box(c: PolyhedralCone, box: int) -> list[IntVec]:
    """All lattice points of ``c`` with every coordinate in ``[-box, box]``."""
    d = c.ambient_dim
    out = []
    for pt in product(range(-box, box + 1), repeat=d):
        if c.contains(pt):
            out.append(pt)
    return out


def positive_functional(c: PolyhedralCone) -> IntVec:
    """Integer functional strictly positive on ``c`` minus the origin."""
    if not is_strongly_convex(c):
        raise NotPointed("no strictly positive functional on a non-pointed cone")
    return tuple(sum(col) for col in zip(*c.inequalities))


def semigroup_contains(gens, v, bound, _cache=None) -> bool:
    """Decide whether ``v`` is a nonnegative integer combination of ``gens``.

    Depth-first search over the cone spanned by the generators, pruned by a
    strictly positive functional ``w`` (the sum of the facet normals).  Every
    representation of ``v`` has coefficient sum at most ``<w, v>``, so when
    ``<w, v> <= bound`` a failed search is a definite negative.  Otherwise a
    failure under the budget raises :class:`BoundTooSmall`.
    """
    gens = as_mat(gens)
    if not gens:
        return is_zero_vec(v)
    dim = len(gens[0])
    v = as_vec(v)
    cone = cone_from_generators(gens, dim)
    if not is_strongly_convex(cone):
        raise NotPointed("generators must span a pointed cone")
    w = positive_functional(cone)
    if any(dot(w, g) <= 0 for g in gens):
        raise AssertionError("positive functional failed on a generator")
    if is_zero_vec(v):
        return True
    if not cone.contains(v):
        return False
    certified = dot(w, v) <= bound
    cache = {} if _cache is None else _cache

    def reach(x):
        if x in cache:
            return cache[x]
        cache[x] = False  # cycle guard; w strictly decreases so cycles cannot occur
        ok = False
        for g in gens:
            rem = vec_sub(x, g)
            if is_zero_vec(rem):
                ok = True
                break
            if cone.contains(rem) and reach(rem):
                ok = True
                break
        cache[x] = ok
        return ok

    if certified:
        if reach(v):
            return True
        return False
    # budget-limited search, no memo sharing across budgets
    def reach_budget(x, budget):
        if budget <= 0:
            return False
        for g in gens:
            rem = vec_sub(x, g)
            if is_zero_vec(rem):
                return True
            if cone.contains(rem) and reach_budget(rem, budget - 1):
                return True
        return False

    if reach_budget(v, bound):
        return True
    raise BoundTooSmall(
        f"no combination with coefficient sum <= {bound}; functional value {dot(w, v)} exceeds the bound"
    )
