import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeb_spectra.approx import (
    BestApprox,
    LatticeTriangle,
    UnimodularAffineMap,
    best_approx,
    brute_best_approx,
    lattice_count,
    normalize_T,
    traynor_width,
    triangle_T,
    vertex_p,
)
from reeb_spectra.errors import (
    DegenerateTriangle,
    DeterminantError,
    LTooSmall,
    NotGreaterThanOne,
    RationalInput,
)
from reeb_spectra.exactnum import ExactScalar, parse_exact, sqrt

S2 = sqrt(2)
PHI = parse_exact("(1+sqrt(5))/2")
SWEEP = {
    "sqrt2": S2,
    "sqrt3": sqrt(3),
    "sqrt5": sqrt(5),
    "phi": PHI,
    "(1+sqrt3)/2": parse_exact("(1+sqrt(3))/2"),
}


def mp_oracle(a_mp, L):
    """Independent high-precision scan: best left and right fractions."""
    left = right = None
    for m in range(1, int(L / a_mp) + 1):
        for n in range(1, int(L) + 1):
            if math.gcd(m, n) != 1:
                continue
            v = mpmath.mpf(n) / m
            if v < a_mp and (left is None or v > left[0]):
                left = (v, m, n)
            if v > a_mp and (right is None or v < right[0]):
                right = (v, m, n)
    return (left[1], left[2]), (right[1], right[2])


def test_sqrt2_l10_example():
    mpmath.mp.dps = 50
    assert mp_oracle(mpmath.sqrt(2), 10) == ((5, 7), (7, 10))
    ba = best_approx(S2, 10)
    assert ba.pairs == ((5, 7), (7, 10))
    assert 5 * 10 - 7 * 7 == 1
    assert ba.det == 1


def test_smallest_admissible_l_for_sqrt2():
    with pytest.raises(LTooSmall):
        best_approx(S2, S2)
    with pytest.raises(LTooSmall):
        brute_best_approx(S2, Fraction(3, 2))
    assert best_approx(S2, 2).pairs == ((1, 1), (1, 2))
    assert best_approx(S2, 3).pairs == ((1, 1), (2, 3))


def test_phi_example():
    mpmath.mp.dps = 50
    assert mp_oracle((1 + mpmath.sqrt(5)) / 2, 10) == ((5, 8), (3, 5))
    assert brute_best_approx(PHI, 10).pairs == ((5, 8), (3, 5))
    assert best_approx(PHI, 10).pairs == ((5, 8), (3, 5))


def test_input_contracts():
    with pytest.raises(RationalInput):
        best_approx(Fraction(3, 2), 10)
    with pytest.raises(NotGreaterThanOne):
        best_approx(S2 - 1, 10)
    with pytest.raises(LTooSmall):
        best_approx(sqrt(7), 2)


def test_best_approx_type_rejects_bad_pairs():
    with pytest.raises(DeterminantError):
        BestApprox(1, 1, 3, 5, S2, 10)  # 1*5 - 3*1 = 2
    with pytest.raises(ValueError):
        BestApprox(2, 2, 1, 2, S2, 10)


@pytest.mark.parametrize("name", sorted(SWEEP))
def test_best_approx_equals_brute(name):
    a = SWEEP[name]
    for j in range(2 * a.ceil(), 201):
        L = Fraction(j, 2)
        ba = best_approx(a, L)
        assert ba == brute_best_approx(a, L), (name, L)
        assert ba.det == 1
        tri = LatticeTriangle((0, 0), (ba.m_minus, ba.n_minus), (ba.m_plus, ba.n_plus))
        assert lattice_count(tri) == (0, 3)
        _, image = normalize_T(a, ba)
        legs = (image.v1[0], image.v2[1])
        assert all(x > 0 for x in legs)
        assert traynor_width(ba) <= legs[0] and traynor_width(ba) <= legs[1]


def test_brute_against_float_oracle_small():
    mpmath.mp.dps = 50
    for name, a_mp in [("sqrt3", mpmath.sqrt(3)), ("sqrt5", mpmath.sqrt(5))]:
        for L in (3, 7, 12, 25):
            assert brute_best_approx(SWEEP[name], L).pairs == mp_oracle(a_mp, L)


def test_lattice_count_examples():
    assert lattice_count(LatticeTriangle((0, 0), (5, 7), (7, 10))) == (0, 3)
    assert lattice_count(LatticeTriangle((0, 0), (1, 0), (0, 1))) == (0, 3)
    # Pick: area 2 = 0 + 6/2 - 1
    assert lattice_count(LatticeTriangle((0, 0), (2, 0), (0, 2))) == (0, 6)
    assert lattice_count(LatticeTriangle((0, 0), (4, 0), (0, 4))) == (3, 12)
    with pytest.raises(DegenerateTriangle):
        LatticeTriangle((0, 0), (1, 1), (2, 2))


def test_triangle_t_vertex_p():
    ba = best_approx(S2, 10)
    p = vertex_p(S2, ba)
    assert p == (50 * S2 - 70, 50 - 35 * S2)
    # on L2: slope -m-/n- through (a, 0)
    assert -Fraction(5, 7) * (p[0] - S2) == p[1]
    tri = triangle_T(S2, ba)
    assert tri.vertices == ((0, 1), (S2, 0), p)


def test_normalize_example():
    ba = best_approx(S2, 10)
    amap, image = normalize_T(S2, ba)
    assert amap.matrix == ((-5, -7), (-7, -10))
    assert amap.translation == (5 * S2, 10)
    assert amap.det == 1
    assert image.vertices == ((0, 0), (5 * S2 - 7, 0), (0, 10 - 7 * S2))
    assert amap(vertex_p(S2, ba)) == (0, 0)
    assert traynor_width(ba) == 5 * S2 - 7


def test_width_phi():
    ba = best_approx(PHI, 10)
    w = traynor_width(ba)
    assert w == 5 * PHI - 8
    assert w < 5 - 3 * PHI
    assert abs(float(w) - 0.09016994374947451) < 1e-15


def test_normalize_rejects_foreign_approximation():
    ba = best_approx(S2, 10)
    with pytest.raises(ValueError):
        normalize_T(sqrt(3), ba)


UNIMODULAR = [(a, b, c, d) for a in range(-6, 7) for b in range(-6, 7) for c in range(-6, 7)
              for d in range(-6, 7) if abs(a * d - b * c) == 1]
unimodular = st.sampled_from(UNIMODULAR)
coord = st.builds(ExactScalar, st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 20), st.just(2))


@settings(max_examples=100, deadline=None)
@given(unimodular, st.tuples(coord, coord), st.lists(st.tuples(coord, coord), min_size=3, max_size=3))
def test_unimodular_map_preserves_doubled_area(m, t, verts):
    try:
        tri = LatticeTriangle(*verts)
    except DegenerateTriangle:
        return
    amap = UnimodularAffineMap(((m[0], m[1]), (m[2], m[3])), t)
    image = amap.apply_triangle(tri)
    assert image.doubled_area() == amap.det * tri.doubled_area()
    back = amap.inverse().apply_triangle(image)
    assert back.vertices == tri.vertices
    assert amap.compose(amap.inverse())((S2, 1)) == (S2, 1)


def test_rejects_non_unimodular_matrix():
    with pytest.raises(DeterminantError):
        UnimodularAffineMap(((2, 0), (0, 1)))


def test_random_integer_triangles_pick():
    rng = random.Random(7)
    for _ in range(200):
        pts = [(rng.randint(-8, 8), rng.randint(-8, 8)) for _ in range(3)]
        try:
            tri = LatticeTriangle(*pts)
        except DegenerateTriangle:
            continue
        i, b = lattice_count(tri)
        edges_b = sum(math.gcd(abs(pts[k][0] - pts[(k + 1) % 3][0]), abs(pts[k][1] - pts[(k + 1) % 3][1]))
                      for k in range(3))
        assert b == edges_b
