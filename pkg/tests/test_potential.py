import random
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minksmooth.polytope import OriginNotVertex, convex_hull, decomposition
from minksmooth.potential import (
    LaurentPoly,
    ZeroCoordinate,
    ZeroPolynomial,
    build_potential,
    critical_exists,
    factor,
    mutate,
    newton_polytope,
    numeric_gradient_check,
    partial,
)

from conftest import lens, segment, triangle


def expand(*term_lists):
    """Product of factors given as lists of exponent tuples (1 is implied)."""
    nvars = len(term_lists[0][0])
    out = LaurentPoly.one(nvars)
    for terms in term_lists:
        f = LaurentPoly.one(nvars)
        for t in terms:
            f = f + LaurentPoly.monomial(t)
        out = out * f
    return out


def z3_times(*term_lists):
    return LaurentPoly.monomial((0, 0, 1)) * expand(*[[t + (0,) for t in terms] for terms in term_lists])


laurent_polys = st.lists(
    st.tuples(
        st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
        st.integers(-4, 4),
    ),
    max_size=5,
).map(lambda terms: LaurentPoly(2, {e: c for e, c in terms}))


@settings(max_examples=80, deadline=None)
@given(laurent_polys, laurent_polys, laurent_polys)
def test_laurent_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    # product rule for the formal derivative
    for var in range(2):
        left = (a * b).derivative(var)
        right = a.derivative(var) * b + a * b.derivative(var)
        assert left == right


def test_factor_examples():
    assert factor(segment((1, 1))) == expand([(1, 1)])
    assert factor(convex_hull([(0, 0)])) == LaurentPoly.one(2)
    assert factor(segment((1, 2))) == expand([(1, 2)])
    with pytest.raises(OriginNotVertex):
        factor(convex_hull([(1, 0), (2, 0)]))


def test_build_potential_q5(d_q5):
    assert build_potential(d_q5) == z3_times([(1, 1)], [(1, 0), (0, 1)])


def test_build_potential_cubic(d_cubic):
    tri = [(1, 0), (0, 1)]
    assert build_potential(d_cubic) == z3_times(tri, tri, tri)


def test_build_potential_q6_second(d_q6_second):
    assert build_potential(d_q6_second) == z3_times([(1, 0)], [(0, 1)], [(1, 1)])


def test_mutate_step_by_step(d_q5):
    start = LaurentPoly.monomial((0, 0, 1))
    after1 = mutate(start, triangle())
    assert after1 == z3_times([(1, 0), (0, 1)])
    after2 = mutate(after1, segment((1, 1)))
    assert after2 == build_potential(d_q5)


def test_mutate_by_point_is_identity():
    p = LaurentPoly.monomial((0, 0, 1))
    assert mutate(p, convex_hull([(0, 0)])) == p


def test_mutation_fold_order_independent(all_fixtures):
    for d in all_fixtures.values():
        closed = build_potential(d)
        for order in permutations(range(d.k)):
            p = LaurentPoly.monomial((0,) * d.n + (1,))
            for i in order:
                p = mutate(p, d.summands[i])
            assert p == closed


def random_admissible_decomposition(rng):
    """Random planar admissible decomposition: unimodular simplices/segments."""
    summands = []
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, 2)
        while True:
            rows = [
                tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(m)
            ]
            from minksmooth.exactlin import snf_invariant_factors

            if all(any(r) for r in rows):
                try:
                    if all(f == 1 for f in snf_invariant_factors(tuple(rows))):
                        break
                except ValueError:
                    pass
        summands.append(convex_hull([(0, 0)] + rows))
    return decomposition(summands)


def test_mutation_fold_on_random_decompositions():
    rng = random.Random(600613)
    for _ in range(50):
        d = random_admissible_decomposition(rng)
        closed = build_potential(d)
        p = LaurentPoly.monomial((0, 0, 1))
        for s in d.summands:
            p = mutate(p, s)
        assert p == closed


def test_newton_polytope_is_target(all_fixtures):
    for d in all_fixtures.values():
        np_poly = newton_polytope(build_potential(d))
        assert np_poly.vertices == tuple(v + (1,) for v in d.target.vertices)


def test_newton_polytope_decomposition_independent(d_q6_first, d_q6_second):
    a = newton_polytope(build_potential(d_q6_first))
    b = newton_polytope(build_potential(d_q6_second))
    assert a == b


def test_newton_polytope_single_monomial_and_zero():
    assert newton_polytope(LaurentPoly.monomial((2, -1))).vertices == ((2, -1),)
    with pytest.raises(ZeroPolynomial):
        newton_polytope(LaurentPoly.zero(2))


def test_partial_examples(d_q5):
    po = build_potential(d_q5)
    dz3 = partial(po, 2)
    assert dz3 == expand([(1, 1, 0)], [(1, 0, 0), (0, 1, 0)])
    assert not partial(LaurentPoly.one(3), 0)
    # Euler operator on a monomial multiplies by the total degree
    mono = LaurentPoly.monomial((2, 3, -1), 5)
    total = LaurentPoly.zero(3)
    for i in range(3):
        shift = [0, 0, 0]
        shift[i] = 1
        total = total + LaurentPoly.monomial(tuple(shift)) * partial(mono, i)
    assert total == mono * 4


def test_critical_q5(d_q5):
    rep = critical_exists(d_q5)
    assert rep.verdict == "finite" and rep.count == 2
    fam = rep.families[0]
    assert fam.z1_minpoly == (-1, 1, 1)
    assert fam.z2_minpoly == (-1, 1, 1)
    assert not fam.on_unit_circle


def test_critical_q6_first(d_q6_first):
    rep = critical_exists(d_q6_first)
    assert rep.verdict == "finite" and rep.count == 2
    fam = rep.families[0]
    assert fam.z1_minpoly == (1, 1, 1)
    assert fam.z2_minpoly == (1, 1, 1)
    assert fam.on_unit_circle


def test_critical_q6_second(d_q6_second):
    rep = critical_exists(d_q6_second)
    assert rep.verdict == "finite" and rep.count == 3
    pts = {
        (round(p[0].real), round(p[1].real))
        for fam in rep.families
        for p in fam.points
    }
    assert pts == {(-1, -1), (-1, 1), (1, -1)}


def test_critical_lens(d_lens21):
    rep = critical_exists(d_lens21)
    assert rep.verdict == "finite" and rep.count == 2
    fam = rep.families[0]
    assert fam.z1_minpoly == (1, 1)
    assert fam.z2_minpoly == (-1, 0, 1)
    assert fam.on_unit_circle
    z2s = sorted(round(p[1].real) for p in fam.points)
    assert z2s == [-1, 1]


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (3, 1), (3, 2), (5, 2)])
def test_critical_lens_family_counts(p, q):
    # first coordinate pinned to -1, second running over the p-th roots of
    # (-1)^(q+1), so exactly p isolated families in the torus
    d = lens(p, q)
    rep = critical_exists(d)
    assert rep.verdict == "finite" and rep.count == p
    fam = rep.families[0]
    assert fam.z1_minpoly == (1, 1)
    expected_ann = tuple([-((-1) ** (q + 1))] + [0] * (p - 1) + [1])
    assert fam.z2_minpoly == expected_ann


def test_critical_cubic_positive_dimensional(d_cubic):
    rep = critical_exists(d_cubic)
    assert rep.verdict == "positive_dimensional"


def test_critical_trapezoid_none(d_no_critical):
    rep = critical_exists(d_no_critical)
    assert rep.verdict == "none" and rep.count == 0


def test_critical_single_summand_none():
    rep = critical_exists(decomposition([triangle()]))
    assert rep.verdict == "none" and rep.count == 0


def test_witness_gradients_vanish(all_fixtures):
    for d in all_fixtures.values():
        rep = critical_exists(d)
        if rep.verdict != "finite":
            continue
        po = build_potential(d)
        for fam in rep.families:
            for z1, z2 in fam.points:
                grad = max(
                    abs(partial(po, i).evaluate([z1, z2, 1.0])) for i in range(3)
                )
                assert grad < 1e-9, (d.target.vertices, (z1, z2), grad)


def test_heuristic_for_other_dimensions():
    d = decomposition(
        [convex_hull([(0,), (1,)]), convex_hull([(0,), (1,)])]
    )
    rep = critical_exists(d)
    assert rep.verdict == "heuristic"
    assert any(abs(p[0] + 1) < 1e-6 for p in rep.heuristic_points)


def test_numeric_gradient_q6_witness(d_q6_first):
    po = build_potential(d_q6_first)
    w = np.exp(2j * np.pi / 3)
    grad_norm = max(abs(partial(po, i).evaluate([w, w, 1.0])) for i in range(3))
    assert grad_norm < 1e-9
    assert numeric_gradient_check(po, [w, w, 1.0], 1e-6) < 1e-6


def test_numeric_gradient_richardson():
    # cubic terms make the central-difference error genuinely O(h^2)
    po = build_potential(decomposition([triangle(), triangle(), triangle()]))
    pt = [0.7 + 0.1j, -1.3 + 0.4j, 0.9]
    e1 = numeric_gradient_check(po, pt, 1e-2)
    e2 = numeric_gradient_check(po, pt, 5e-3)
    assert e2 < e1
    assert 2.5 < e1 / e2 < 5.5  # halving h quarters the error
    assert numeric_gradient_check(LaurentPoly.one(3), pt, 1e-3) == 0.0
    with pytest.raises(ZeroCoordinate):
        numeric_gradient_check(po, [0.0, 1.0, 1.0], 1e-3)
