"""Laurent-polynomial superpotentials: construction, mutation, Newton
polytope, and the critical-point decision.

The critical-locus analysis hinges on one reduction: the potential is the
last variable times a product of summand factors, so torus critical points
exist exactly when two distinct factors vanish simultaneously on the torus.
For planar decompositions that pairwise condition is decided exactly with
resultants and number-field gcds; other dimensions fall back to a clearly
labeled numeric search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .polytope import (
    LatticePolytope,
    MinkowskiDecomposition,
    OriginNotVertex,
    convex_hull,
    require_admissible,
)
from . import ratpoly as rp


class ZeroPolynomial(ValueError):
    pass


class ZeroCoordinate(ValueError):
    pass


class LaurentPoly:
    """Integer-coefficient Laurent polynomial keyed by exponent vectors."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exp, coeff in dict(terms).items():
                if coeff:
                    self.terms[tuple(exp)] = int(coeff)

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: 1})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPoly(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) - c
        return LaurentPoly(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers of polynomials are not Laurent")
        out = LaurentPoly.one(self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def sorted_terms(self):
        return sorted(self.terms.items())

    def derivative(self, var):
        out = {}
        for exp, c in self.terms.items():
            k = exp[var]
            if k:
                new = list(exp)
                new[var] = k - 1
                key = tuple(new)
                out[key] = out.get(key, 0) + c * k
        return LaurentPoly(self.nvars, out)

    def evaluate(self, point):
        point = list(point)
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = 0j
        for exp, c in self.terms.items():
            val = complex(c)
            for z, e in zip(point, exp):
                if e:
                    val *= z ** e
            total += val
        return total

    def lift(self, nvars):
        """Pad exponent vectors with zeros up to ``nvars`` variables."""
        pad = nvars - self.nvars
        if pad < 0:
            raise ValueError("cannot drop variables")
        return LaurentPoly(nvars, {e + (0,) * pad: c for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp, c in self.sorted_terms():
            mono = "*".join(f"z{i + 1}^{e}" for i, e in enumerate(exp) if e)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def factor(mi: LatticePolytope) -> LaurentPoly:
    """Constant term one plus one monomial per nonzero vertex."""
    if not mi.origin_is_vertex:
        raise OriginNotVertex("factor needs the origin as a vertex")
    out = LaurentPoly.one(mi.ambient_dim)
    for v in mi.nonzero_vertices():
        out = out + LaurentPoly.monomial(v)
    return out


def build_potential(d: MinkowskiDecomposition) -> LaurentPoly:
    """Last variable times the product of the summand factors."""
    require_admissible(d)
    n = d.n
    out = LaurentPoly.monomial((0,) * n + (1,))
    for s in d.summands:
        out = out * factor(s).lift(n + 1)
    return out


def mutate(p: LaurentPoly, summand: LatticePolytope) -> LaurentPoly:
    """Wall-crossing substitution: last variable -> last variable times the
    summand factor, everything else fixed; expanded and collected."""
    n = p.nvars
    fac = factor(summand).lift(n)
    out = LaurentPoly.zero(n)
    for exp, c in p.terms.items():
        e_last = exp[-1]
        if e_last < 0:
            raise ValueError("mutation needs nonnegative exponents in the last variable")
        out = out + LaurentPoly(n, {exp: c}) * (fac ** e_last)
    return out


def newton_polytope(p: LaurentPoly) -> LatticePolytope:
    if not p:
        raise ZeroPolynomial("zero polynomial has no Newton polytope")
    return convex_hull(list(p.terms.keys()))


def partial(p: LaurentPoly, var: int) -> LaurentPoly:
    return p.derivative(var)


def numeric_gradient_check(p: LaurentPoly, point, h: float) -> float:
    """Largest deviation between analytic partials and central differences."""
    point = [complex(z) for z in point]
    if any(z == 0 for z in point):
        raise ZeroCoordinate("point must avoid the coordinate hyperplanes")
    worst = 0.0
    for i in range(p.nvars):
        analytic = p.derivative(i).evaluate(point)
        up = list(point)
        dn = list(point)
        up[i] += h
        dn[i] -= h
        numeric = (p.evaluate(up) - p.evaluate(dn)) / (2 * h)
        worst = max(worst, abs(analytic - numeric))
    return worst


# ---------------------------------------------------------------------------
# critical points


@dataclass
class CriticalFamily:
    """One algebraic family of isolated torus solutions in the first two
    variables; the last variable is free along each.

    ``z1_minpoly`` is irreducible over Q.  ``z2_minpoly`` is the squarefree
    annihilator of the partner coordinate across the whole family; it is the
    minimal polynomial when the family carries a single partner per root and
    may factor further otherwise (it never vanishes at zero).
    """

    z1_minpoly: tuple[int, ...]
    z2_minpoly: tuple[int, ...]
    pair: tuple[int, int]
    points: list[tuple[complex, complex]]
    on_unit_circle: bool


@dataclass
class CriticalReport:
    verdict: str  # "none" | "finite" | "positive_dimensional" | "heuristic"
    count: int | None = None
    families: list[CriticalFamily] = field(default_factory=list)
    heuristic_points: list[tuple[complex, ...]] = field(default_factory=list)
    note: str = ""


def _clear_to_bpoly(p: LaurentPoly) -> rp.BPoly:
    """Shift a two-variable Laurent polynomial into Q[x][y] by a monomial."""
    if not p.terms:
        return ()
    min1 = min(e[0] for e in p.terms)
    min2 = min(e[1] for e in p.terms)
    dy = max(e[1] for e in p.terms) - min2
    dx = max(e[0] for e in p.terms) - min1
    rows = []
    for j in range(dy + 1):
        coeffs = [Fraction(0)] * (dx + 1)
        for (e1, e2), c in p.terms.items():
            if e2 - min2 == j:
                coeffs[e1 - min1] += c
        rows.append(rp.utrim(coeffs))
    return rp.btrim(rows)


def _strip_x(u: rp.UPoly) -> rp.UPoly:
    """Drop the monomial factor x^k; torus roots are unaffected."""
    k = 0
    while k < len(u) and u[k] == 0:
        k += 1
    return rp.utrim(u[k:])


def _roots_on_unit_circle(int_coeffs, tol=1e-12) -> bool:
    if len(int_coeffs) <= 1:
        return True
    roots = np.roots(list(reversed(int_coeffs)))
    return bool(np.all(np.abs(np.abs(roots) - 1.0) < tol))


def _pair_families(bi, bj, pair, circle_tol):
    """Common torus zeros of a pair of cleared integer polynomials.

    Returns ("positive", None) when the gcd carries a non-monomial factor,
    else ("finite", families).
    """
    g = rp.bgcd(bi, bj)
    if rp.b_num_terms(g) > 1:
        return "positive", None
    res = rp.bresultant_y(bi, bj)
    res = _strip_x(res)
    if rp.udeg(res) <= 0:
        return "finite", []
    res = rp.usquarefree(res)
    families = []
    for f, _mult in rp.factor_rational(res):
        if rp.udeg(f) < 1 or f == rp.upoly(0, 1):  # constant or the root x = 0
            continue
        K = rp.NumberField(f)
        ri = rp.btrim([K.reduce(u) for u in bi])
        rj = rp.btrim([K.reduce(u) for u in bj])
        # one side may vanish identically above these roots; the gcd routine
        # then returns the survivor, whose zeros are the common zeros here
        h = _kmonic_strip(K, rp.kgcd_y(K, ri, rj))
        if h is None or rp.bdeg_y(h) < 1:
            continue
        z2_ann = _partner_minpoly(f, h)
        numeric = _numeric_points(f, h)
        circle = _roots_on_unit_circle(rp.u_int_coeffs(f), circle_tol) and _roots_on_unit_circle(
            rp.u_int_coeffs(z2_ann), circle_tol
        )
        families.append(
            CriticalFamily(
                z1_minpoly=rp.u_int_coeffs(f),
                z2_minpoly=rp.u_int_coeffs(z2_ann),
                pair=pair,
                points=numeric,
                on_unit_circle=circle,
            )
        )
    return "finite", families


def _kmonic_strip(K, h):
    """Remove partner roots at zero (non-torus) from h in K[y]."""
    h = rp.btrim([K.reduce(u) for u in h])
    while h and not h[0]:
        h = h[1:]
    return rp.btrim(h) if h else None


def _partner_minpoly(f, h) -> rp.UPoly:
    """Squarefree annihilator of the second coordinate over the family:
    eliminate x between f(x) and the lifted h(x, y) by a resultant taken in
    Q[y][x] (swap the nesting, then eliminate the new inner variable)."""
    h_swapped = rp.b_transpose(rp.btrim(list(h)))
    f_swapped = rp.b_transpose(rp.btrim([f]))
    res = rp.bresultant_y(h_swapped, f_swapped)
    return rp.usquarefree(_strip_x(res))


def _numeric_points(f, h):
    """Numeric witnesses: roots of f paired with the roots of h above each."""
    pts = []
    z1_roots = np.roots([float(c) for c in reversed(rp.u_int_coeffs(f))])
    hcoeffs = list(h)
    for alpha in z1_roots:
        poly_y = []
        for u in hcoeffs:
            val = 0j
            for c in reversed(u):
                val = val * alpha + complex(c)
            poly_y.append(val)
        arr = list(reversed(poly_y))
        z2_roots = np.roots(arr) if len(arr) > 1 else []
        for beta in z2_roots:
            pts.append((complex(alpha), complex(beta)))
    return pts


def critical_exists(d: MinkowskiDecomposition, circle_tol: float = 1e-12) -> CriticalReport:
    """Decide torus critical points of the potential.

    Planar case: exact, via pairwise elimination of the summand factors.
    Anything else: numeric multi-start search, flagged as heuristic.
    """
    require_admissible(d)
    if d.n != 2:
        return _heuristic_search(d)
    factors = [factor(s) for s in d.summands]
    cleared = [_clear_to_bpoly(f) for f in factors]
    families = []
    for (i, bi), (j, bj) in combinations(enumerate(cleared), 2):
        kind, fams = _pair_families(bi, bj, (i + 1, j + 1), circle_tol)
        if kind == "positive":
            return CriticalReport(
                verdict="positive_dimensional",
                note=f"factors {i + 1} and {j + 1} share a curve of torus zeros",
            )
        # confirm with the other elimination order
        ti, tj = rp.b_transpose(bi), rp.b_transpose(bj)
        kind2, fams2 = _pair_families(ti, tj, (i + 1, j + 1), circle_tol)
        if kind2 == "positive" or _distinct_point_count(fams) != _distinct_point_count(fams2):
            raise AssertionError("elimination orders disagree on the solution count")
        families.extend(fams)
    count = _distinct_point_count(families)
    if count == 0:
        return CriticalReport(verdict="none", count=0)
    return CriticalReport(verdict="finite", count=count, families=families)


def _distinct_point_count(families, tol=1e-8):
    pts = []
    for fam in families:
        for p in fam.points:
            if all(abs(p[0] - q[0]) > tol or abs(p[1] - q[1]) > tol for q in pts):
                pts.append(p)
    return len(pts)


def _heuristic_search(d, starts=40, iters=80, tol=1e-10, seed=7):
    """Damped Newton on the full gradient with the last variable pinned to 1.
    Non-authoritative by construction; the verdict is always "heuristic"."""
    pot = build_potential(d)
    n1 = pot.nvars
    grads = [pot.derivative(i) for i in range(n1)]
    hessian = [[g.derivative(b) for b in range(n1 - 1)] for g in grads]
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(starts):
        z = np.exp(2j * np.pi * rng.random(n1 - 1))
        for _ in range(iters):
            point = list(z) + [1.0 + 0j]
            vals = np.array([g.evaluate(point) for g in grads])
            if np.linalg.norm(vals) < tol:
                break
            jac = np.zeros((n1, n1 - 1), dtype=complex)
            for a in range(n1):
                for b in range(n1 - 1):
                    jac[a, b] = hessian[a][b].evaluate(point)
            step, *_ = np.linalg.lstsq(jac, -vals, rcond=None)
            if not np.all(np.isfinite(step)):
                break
            z = z + 0.5 * step
            if np.any(np.abs(z) < 1e-13):
                break
        point = list(z) + [1.0 + 0j]
        residual = max(abs(g.evaluate(point)) for g in grads)
        if residual < tol and all(abs(w) > 1e-9 for w in z):
            if all(max(abs(z[i] - q[i]) for i in range(n1 - 1)) > 1e-6 for q in found):
                found.append(tuple(complex(w) for w in z))
    return CriticalReport(
        verdict="heuristic",
        count=None,
        heuristic_points=sorted(found, key=lambda t: (t[0].real, t[0].imag)),
        note="dimension is not 2: numeric multi-start search, not a proof",
    )
