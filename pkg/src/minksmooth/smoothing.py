"""Labeled character generators, binomial relations, chart expressions,
singular-fibre models, and the homogeneity certificate.

Characters are tagged by :class:`CharLabel`.  Kinds follow the coordinate
roles in the smoothing: ``t`` for the deformation slots, ``x``/``y`` for the
vanishing-allowed chart coordinates of a summand, ``w+``/``w-`` for the
invertible pair attached to a kernel column, and ``extra`` for remaining
Hilbert-basis characters.  Summand vertex rows are in canonical (sorted)
order, so a label like ``x[1,2]`` is deterministic but can differ from an
ad-hoc hand numbering of the same vector set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cone import (
    PolyhedralCone,
    lattice_points_in_box,
    cone_from_generators,
    positive_functional,
)
from .exactlin import (
    IntVec,
    as_vec,
    dot,
    is_zero_vec,
    rational_nullspace,
    scale_to_integer,
    vec_add,
    vec_neg,
    vec_sub,
)
from .polytope import MinkowskiDecomposition, phi, require_admissible


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True, order=True)
class CharLabel:
    kind: str  # "t", "x", "y", "w+", "w-", "extra"
    i: int = 0
    j: int = 0

    def __str__(self):
        if self.kind in ("t", "y"):
            return f"{self.kind}[{self.i}]"
        if self.kind == "extra":
            return f"extra[{self.i}]"
        return f"{self.kind}[{self.i},{self.j}]"


def T(i):
    return CharLabel("t", i)


def X(i, j):
    return CharLabel("x", i, j)


def Y(i):
    return CharLabel("y", i)


def WPlus(i, l):
    return CharLabel("w+", i, l)


def WMinus(i, l):
    return CharLabel("w-", i, l)


def Extra(idx):
    return CharLabel("extra", idx)


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    k: int
    entries: tuple[tuple[CharLabel, IntVec], ...]

    def vector(self, label) -> IntVec:
        for lab, vec in self.entries:
            if lab == label:
                return vec
        raise UnknownLabel(str(label))

    def vectors(self) -> list[IntVec]:
        return sorted({vec for _, vec in self.entries})

    def labels(self) -> list[CharLabel]:
        return [lab for lab, _ in self.entries]


def _tagged(d, v) -> IntVec:
    return as_vec(v) + phi(d, v)


def generator_set(d: MinkowskiDecomposition) -> GeneratorSet:
    """The labeled character set: deformation slots, per-summand chart
    vectors, and whatever else of the Hilbert basis is left over."""
    from .cone import dual, hilbert_basis, sigma_tilde

    mats = require_admissible(d)
    n, k = d.n, d.k
    entries = []
    for i in range(1, k + 1):
        tag = (0,) * n + tuple(1 if j == i else 0 for j in range(1, k + 1))
        entries.append((T(i), tag))
    for i, sm in enumerate(mats, start=1):
        for j in range(1, sm.m + 1):
            entries.append((X(i, j), _tagged(d, sm.a_column(j - 1))))
        if sm.m > 0:  # a point summand contributes only its deformation slot
            entries.append((Y(i), _tagged(d, sm.b)))
        for l in range(1, n - sm.m + 1):
            col = sm.c_column(l - 1)
            entries.append((WPlus(i, l), _tagged(d, col)))
            entries.append((WMinus(i, l), _tagged(d, vec_neg(col))))
    labeled_vectors = {vec for _, vec in entries}
    hb = hilbert_basis(dual(sigma_tilde(d)))
    extras = sorted(
        {
            as_vec(h[:n]) + phi(d, h[:n])
            for h in hb.elements
            if not is_zero_vec(h[:n])
        }
        - labeled_vectors
    )
    for idx, vec in enumerate(extras, start=1):
        entries.append((Extra(idx), vec))
    return GeneratorSet(n, k, tuple(entries))


def verify_generates(g: GeneratorSet, c: PolyhedralCone, box: int) -> bool:
    """Every lattice point of ``c`` with coordinates in ``[-box, box]`` must be
    a nonnegative integer combination of the generator vectors, and every
    generator vector must lie in ``c``."""
    gens = g.vectors()
    if any(not c.contains(v) for v in gens):
        return False
    span = cone_from_generators(gens, c.ambient_dim)
    w = positive_functional(span)
    targets = sorted(lattice_points_in_box(c, box), key=lambda p: dot(w, p))
    cache: dict[IntVec, bool] = {}

    def reach(x):
        if is_zero_vec(x):
            return True
        if x in cache:
            return cache[x]
        cache[x] = False
        ok = False
        for gv in gens:
            rem = vec_sub(x, gv)
            if is_zero_vec(rem):
                ok = True
                break
            if span.contains(rem) and reach(rem):
                ok = True
                break
        cache[x] = ok
        return ok

    return all(reach(t) for t in targets)


def relation_xy(d: MinkowskiDecomposition, p: int) -> IntVec:
    """Deformation exponents of y_p * prod_l x_{p,l}: the vector beta with
    beta_j the t_j-exponent.  Its own slot is always 1."""
    mats = require_admissible(d)
    sm = mats[p - 1]
    if sm.m == 0:
        raise ValueError(f"summand {p} is a point and has no chart relation")
    beta = phi(d, sm.b)
    for j in range(sm.m):
        beta = vec_add(beta, phi(d, sm.a_column(j)))
    assert beta[p - 1] == 1, "own deformation slot must carry exponent 1"
    return beta


def relation_w(d: MinkowskiDecomposition, p: int, j: int) -> IntVec:
    """Deformation exponents of w+_{p,j} * w-_{p,j}; the p-th slot vanishes."""
    mats = require_admissible(d)
    sm = mats[p - 1]
    if not 1 <= j <= sm.n - sm.m:
        raise IndexError(f"kernel column index {j} out of range for summand {p}")
    col = sm.c_column(j - 1)
    eta = vec_add(phi(d, col), phi(d, vec_neg(col)))
    assert eta[p - 1] == 0, "own deformation slot must carry exponent 0"
    return eta


@dataclass(frozen=True)
class BinomialRelation:
    lhs: tuple[CharLabel, ...]
    rhs: tuple[CharLabel, ...]


def verify_binomial(g: GeneratorSet, r: BinomialRelation) -> bool:
    dim = g.n + g.k
    total_l = tuple([0] * dim)
    for lab in r.lhs:
        total_l = vec_add(total_l, g.vector(lab))
    total_r = tuple([0] * dim)
    for lab in r.rhs:
        total_r = vec_add(total_r, g.vector(lab))
    return total_l == total_r


@dataclass(frozen=True)
class ChartExpression:
    """Exponent record for a character in the chart of summand p.

    Non-singular charts use the plain integer coordinates ``xi`` in the
    column basis [A_p C_p].  Singular charts shift the first block through
    the y_p coordinate: ``xi_plus`` many copies of y_p, shifted nonnegative
    ``xi_shifted`` on the x's; in that mode the t_p exponent is zero.
    """

    p: int
    singular: bool
    xi_plus: int | None
    xi_shifted: tuple[int, ...] | None
    xi_x: tuple[int, ...] | None
    xi_w: tuple[int, ...]
    t_exponents: tuple[int, ...]


def express_in_chart(d: MinkowskiDecomposition, zhat, p: int, singular: bool) -> ChartExpression:
    zhat = as_vec(zhat)
    if is_zero_vec(zhat):
        raise ValueError("zero vector has no chart expression")
    mats = require_admissible(d)
    sm = mats[p - 1]
    m, n = sm.m, sm.n
    x_rows = sm.v + sm.e
    xi = tuple(dot(row, zhat) for row in x_rows)
    xi_x, xi_w = xi[:m], xi[m:]
    tail = phi(d, zhat)
    if not singular:
        acc = [0] * d.k
        for l in range(m):
            acc = vec_add(acc, tuple(xi_x[l] * t for t in phi(d, sm.a_column(l))))
        for l in range(n - m):
            acc = vec_add(acc, tuple(xi_w[l] * t for t in phi(d, sm.c_column(l))))
        t_exp = vec_sub(tail, acc)
        return ChartExpression(p, False, None, None, xi_x, xi_w, t_exp)
    xi_plus = max([0] + [-v for v in xi_x])
    xi_shifted = tuple(v + xi_plus for v in xi_x)
    assert tail[p - 1] == xi_plus, "singular chart exponent must match the phi tail"
    acc = tuple(xi_plus * t for t in phi(d, sm.b))
    for l in range(m):
        acc = vec_add(acc, tuple(xi_shifted[l] * t for t in phi(d, sm.a_column(l))))
    for l in range(n - m):
        acc = vec_add(acc, tuple(xi_w[l] * t for t in phi(d, sm.c_column(l))))
    t_exp = vec_sub(tail, acc)
    assert t_exp[p - 1] == 0, "t_p must not appear in a singular chart"
    return ChartExpression(p, True, xi_plus, xi_shifted, None, xi_w, t_exp)


@dataclass(frozen=True)
class FibreModel:
    """Local model of the fibre attached to summand p: the vanishing product
    over the listed coordinates inside C^{m_p+1} x (C*)^{n-m_p}.  The general
    fibre away from the critical values is an n-torus."""

    p: int
    m_p: int
    n: int
    product_coords: tuple[CharLabel, ...]
    unit_coords: tuple[CharLabel, ...]

    @property
    def equation(self) -> str:
        return " * ".join(str(c) for c in self.product_coords) + " = 0"


def fibre_model(d: MinkowskiDecomposition, p: int) -> FibreModel:
    mats = require_admissible(d)
    if not 1 <= p <= d.k:
        raise IndexError(f"summand index {p} out of range")
    sm = mats[p - 1]
    if sm.m == 0:
        raise ValueError(f"summand {p} is a point; its fibre is a smooth torus")
    prod_coords = (Y(p),) + tuple(X(p, j) for j in range(1, sm.m + 1))
    unit_coords = tuple(WPlus(p, l) for l in range(1, sm.n - sm.m + 1))
    return FibreModel(p, sm.m, sm.n, prod_coords, unit_coords)


def check_homogeneity(g: GeneratorSet) -> tuple[IntVec, int] | None:
    """Integer grading (u, deg) with <m, u> = deg > 0 for every generator
    vector, when one exists.  Solved exactly over the rationals."""
    vecs = g.vectors()
    if not vecs:
        return None
    rows = [v + (-1,) for v in vecs]
    basis = rational_nullspace(rows)
    for vec in basis:
        if vec[-1] != 0:
            ints = scale_to_integer(vec)
            if ints[-1] < 0:
                ints = vec_neg(ints)
            return ints[:-1], ints[-1]
    return None
