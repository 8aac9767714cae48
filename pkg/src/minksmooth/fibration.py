"""Base-diagram combinatorics: collapsing cycles, wall regions, monodromy
shears, transferring the cut, and the duality check for the final diagram.

The cut direction is fixed to the last coordinate axis.  Transferring the
cut for summand p adds the summand's support term to the boundary height;
the per-region affine shears are kept as metadata so the cancellation
identities can be checked, while the height bookkeeping itself only needs
the support function (the per-summand maxima add up to the target's).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product as iproduct

from .cone import PolyhedralCone, cone_from_inequalities, cone_over, cones_equal, dual
from .exactlin import (
    IntMat,
    IntVec,
    as_vec,
    dot,
    rational_solve,
    sign_normalized,
    unimodular_inverse,
    vec_neg,
    vec_sub,
)
from .polytope import MinkowskiDecomposition, convex_hull, require_admissible
from .smoothing import CharLabel, X, Y


class AlreadyApplied(ValueError):
    pass


class CutsRemaining(ValueError):
    pass


class NegativeArea(ValueError):
    pass


def _vertex_rows(d: MinkowskiDecomposition, p: int) -> IntMat:
    mats = require_admissible(d)
    if not 1 <= p <= d.k:
        raise IndexError(f"summand index {p} out of range")
    return mats[p - 1].v


@dataclass(frozen=True)
class CollapsingCycle:
    """A 1-cycle of the torus fibre that dies on a codimension-2 stratum,
    tagged by the two chart coordinates that vanish there."""

    vector: IntVec
    vanishing: tuple[CharLabel, CharLabel]


def collapsing_cycles(d: MinkowskiDecomposition, p: int) -> tuple[CollapsingCycle, ...]:
    rows = _vertex_rows(d, p)
    m = len(rows)
    cycles = [CollapsingCycle(rows[i], (Y(p), X(p, i + 1))) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            cycles.append(
                CollapsingCycle(
                    sign_normalized(vec_sub(rows[i], rows[j])),
                    (X(p, i + 1), X(p, j + 1)),
                )
            )
    return tuple(cycles)


@dataclass(frozen=True)
class Region:
    """Open region cut out by strict inequalities <a, lambda> > 0."""

    j: int
    normals: IntMat

    def contains(self, lam) -> bool:
        return all(sum(a * x for a, x in zip(n, lam)) > 0 for n in self.normals)


@dataclass(frozen=True)
class RegionFan:
    p: int
    regions: tuple[Region, ...]


def regions(d: MinkowskiDecomposition, p: int) -> RegionFan:
    """Wall complement for summand p: region 0 sees all vertex functionals
    positive, region j flips vertex j below the others."""
    rows = _vertex_rows(d, p)
    m = len(rows)
    out = [Region(0, rows)]
    for j in range(1, m + 1):
        vj = rows[j - 1]
        normals = [vec_neg(vj)]
        normals += [vec_sub(rows[l], vj) for l in range(m) if l != j - 1]
        out.append(Region(j, tuple(normals)))
    return RegionFan(p, tuple(out))


def _shear_last_column(v, n) -> IntMat:
    rows = []
    for i in range(n + 1):
        row = [1 if i == j else 0 for j in range(n + 1)]
        if i < n:
            row[n] = v[i]
        rows.append(tuple(row))
    return tuple(rows)


def _shear_last_row(v, n) -> IntMat:
    rows = []
    for i in range(n + 1):
        if i < n:
            rows.append(tuple(1 if i == j else 0 for j in range(n + 1)))
        else:
            rows.append(tuple(list(v) + [1]))
    return tuple(rows)


def monodromy(d: MinkowskiDecomposition, p: int, j: int) -> IntMat:
    """Topological monodromy around the j-th stratum of summand p: identity
    with the vertex vector in the last column."""
    rows = _vertex_rows(d, p)
    if not 1 <= j <= len(rows):
        raise IndexError(f"stratum index {j} out of range for summand {p}")
    return _shear_last_column(rows[j - 1], d.n)


def affine_monodromy(d: MinkowskiDecomposition, p: int, j: int) -> IntMat:
    """Transpose inverse of the topological monodromy: identity with minus
    the vertex vector in the last row."""
    rows = _vertex_rows(d, p)
    if not 1 <= j <= len(rows):
        raise IndexError(f"stratum index {j} out of range for summand {p}")
    return _shear_last_row(vec_neg(rows[j - 1]), d.n)


CUT_DIRECTION_NOTE = (
    "cuts point along (0,...,0,1); analytic wall heights are presentation "
    "artifacts and are not modeled"
)


@dataclass(frozen=True)
class BaseDiagram:
    """Combinatorial state of the convex base diagram.

    ``applied`` is the set of summand indices whose cut has been transferred;
    the boundary height over a functional c is the sum of the applied
    summands' support terms, so nothing applied means height zero.  The
    per-region shears and stratum tags are exposed as metadata so the
    cancellation identities stay testable on the diagram itself.
    """

    decomposition: MinkowskiDecomposition
    applied: frozenset[int]

    @property
    def cut_direction(self) -> IntVec:
        return tuple([0] * self.decomposition.n + [1])

    def boundary_height(self, c) -> int:
        c = as_vec(c)
        total = 0
        for p in sorted(self.applied):
            s = self.decomposition.summands[p - 1]
            total += max(dot(c, vec_neg(v)) for v in s.vertices)
        return total

    def strata(self, p) -> tuple[CollapsingCycle, ...]:
        """Codimension-two stratum tags of summand p's singular fibre."""
        return collapsing_cycles(self.decomposition, p)

    def region_map(self, p, j) -> IntMat:
        """Shear applied to region j when transferring the cut of summand p;
        region zero is left alone."""
        if p not in self.applied:
            raise ValueError(f"cut {p} has not been transferred")
        if j == 0:
            n = self.decomposition.n
            return tuple(tuple(1 if a == b else 0 for b in range(n + 1)) for a in range(n + 1))
        return affine_monodromy(self.decomposition, p, j)


def new_base_diagram(d: MinkowskiDecomposition) -> BaseDiagram:
    require_admissible(d)
    return BaseDiagram(d, frozenset())


def transfer_cut(b: BaseDiagram, p: int) -> BaseDiagram:
    """Transfer the cut of summand p, folding its support term into the
    boundary.  The per-region shears compose consistently: crossing from
    region i to region j inside the cut is the shear by their vertex
    difference, which is exactly what the applied affine monodromies cancel.
    """
    d = b.decomposition
    if not 1 <= p <= d.k:
        raise IndexError(f"summand index {p} out of range")
    if p in b.applied:
        raise AlreadyApplied(f"cut {p} was already transferred")
    m = len(_vertex_rows(d, p))
    for i in range(1, m + 1):
        ai = affine_monodromy(d, p, i)
        for j in range(1, m + 1):
            if i == j:
                continue
            aj_inv = unimodular_inverse(affine_monodromy(d, p, j))
            prod = tuple(
                tuple(dot(row, col) for col in zip(*aj_inv)) for row in ai
            )
            rows = _vertex_rows(d, p)
            expected = _shear_last_row(vec_sub(rows[j - 1], rows[i - 1]), d.n)
            if prod != expected:
                raise AssertionError("cross-wall shears failed to cancel")
    return replace(b, applied=b.applied | {p})


def final_cone(b: BaseDiagram) -> PolyhedralCone:
    """The cone swept out once every cut is transferred.

    Built purely from the summand data: the boundary height is the sum of
    the summand support terms, so the region above it is cut out by the
    functionals (w_1 + ... + w_k, 1) over all vertex choices w_p of M_p.
    The result must coincide with the dual of the cone over the target; that
    equality is asserted here because it is the whole point of the diagram.
    """
    d = b.decomposition
    if b.applied != frozenset(range(1, d.k + 1)):
        missing = sorted(set(range(1, d.k + 1)) - b.applied)
        raise CutsRemaining(f"cuts {missing} not yet transferred")
    rows = []
    for combo in iproduct(*(s.vertices for s in d.summands)):
        total = tuple(sum(c) for c in zip(*combo))
        rows.append(total + (1,))
    cone = cone_from_inequalities(rows, d.n + 1)
    reference = dual(cone_over(d.target))
    if not cones_equal(cone, reference):
        raise AssertionError("final diagram does not match the dual cone")
    return cone


def height_one_normalization(c: PolyhedralCone):
    """Unimodular shear putting all extreme rays at last coordinate one.

    Returns ``(matrix, polytope)`` when an integer w exists with
    <w, head> + tail = 1 on every extreme ray (c_r, d_r); the matrix is the
    identity with last row (w, 1) and the polytope collects the ray heads.
    Returns None when the exact linear system has no integer solution.
    """
    dim = c.ambient_dim
    axis = tuple([0] * (dim - 1) + [1])
    if not c.contains(axis):
        raise ValueError("cone does not contain the vertical axis ray")
    rays = c.generators
    rows = [r[:-1] for r in rays]
    rhs = [1 - r[-1] for r in rays]
    sol = rational_solve(rows, rhs)
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    w = tuple(int(x) for x in sol)
    mat = _shear_last_row(w, dim - 1)
    heads = convex_hull([r[:-1] for r in rays])
    return mat, heads


def disk_time(v, s) -> Fraction:
    """Hitting time s / (|v|^2 + 1) of the downward path against the facet
    with normal (v, 1); the pairing <(v,1),(v,1)> times it recovers s."""
    s = Fraction(s)
    if s < 0:
        raise NegativeArea("area must be nonnegative")
    v = as_vec(v)
    t0 = s / (dot(v, v) + 1)
    assert (dot(v, v) + 1) * t0 == s
    return t0
