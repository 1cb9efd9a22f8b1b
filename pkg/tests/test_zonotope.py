import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from covcert.exact_linalg import int_det, matmul
from covcert.zonotope import (
    GeneralPositionError,
    HPolytope,
    NotPrimitiveError,
    VolumeVector,
    Zonotope,
    check_sign_relation,
    facet_inequalities,
    generators_from_volume_vector,
    sign_points,
    volume_vector,
)

TIGHT_GENERATORS = {
    (1, 2, 3, 4): [(1, -1, 1), (0, 1, 1), (1, 1, -1), (-1, -1, 0)],
    (1, 3, 4, 6): [(1, 1, 2), (1, -1, 0), (-1, -1, 1), (0, 1, -1)],
    (1, 3, 4, 7): [(1, 0, 2), (1, -1, -2), (-1, -1, 1), (0, 1, 0)],
}


@pytest.mark.parametrize("v", sorted(TIGHT_GENERATORS))
def test_volume_vector_of_tight_generators(v):
    assert tuple(volume_vector(Zonotope.from_columns(TIGHT_GENERATORS[v]))) == v


def test_volume_vector_small():
    assert tuple(volume_vector(Zonotope.from_columns([(1, 0), (0, 1), (1, 1)]))) == (1, 1, 1)
    with pytest.raises(GeneralPositionError):
        volume_vector(Zonotope.from_columns([(1, 0), (2, 0), (1, 1)]))


def test_volume_vector_flags():
    v = VolumeVector((2, 4, 6))
    assert not v.primitive and v.strong
    assert VolumeVector((1, 1, 2)).primitive and not VolumeVector((1, 1, 2)).strong
    with pytest.raises(ValueError):
        VolumeVector((0, 1))
    assert str(VolumeVector((1, 2, 3, 4))) == "(1, 2, 3, 4)"


def test_generators_one_dimensional():
    z = generators_from_volume_vector((1, 1))
    assert z.dim == 1 and sorted(z.generators[0]) == [-1, 1]
    assert tuple(volume_vector(z)) == (1, 1)


def test_generators_reject_non_primitive():
    with pytest.raises(NotPrimitiveError):
        generators_from_volume_vector((2, 4, 6, 8))


@pytest.mark.parametrize("v", [(1, 2, 3, 4), (1, 3, 4, 7), (1, 2, 3), (5, 1, 3), (2, 2, 3), (7, 11, 13, 17, 19)])
def test_generators_round_trip(v):
    assert tuple(volume_vector(generators_from_volume_vector(v))) == v


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.lists(st.integers(1, 50), min_size=n, max_size=n)))
def test_round_trip_random(v):
    if math.gcd(*v) != 1:
        return
    assert tuple(volume_vector(generators_from_volume_vector(v))) == tuple(v)


def test_generators_are_short():
    # conditioning keeps entries small even for large volumes
    z = generators_from_volume_vector((17, 45, 61, 70))
    assert max(abs(x) for row in z.generators for x in row) <= 10


def test_unimodular_invariance():
    rng = random.Random(3)
    z = generators_from_volume_vector((2, 5, 9, 13))
    for _ in range(20):
        u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        for _ in range(4):
            i, j = rng.sample(range(3), 2)
            k = rng.choice([-2, -1, 1, 2])
            u[i] = [a + k * b for a, b in zip(u[i], u[j])]
        assert abs(int_det(u)) == 1
        assert volume_vector(Zonotope(matmul(u, z.generators))) == volume_vector(z)


def test_sign_relation_examples():
    assert check_sign_relation(Zonotope.from_columns([(1, 0), (0, 1), (1, 1)])) == (1, 1, -1)
    assert check_sign_relation(Zonotope(((1, -1),))) == (1, 1)


@pytest.mark.parametrize("v", [(1, 2, 3, 4), (1, 3, 4, 6), (3, 8, 12, 14), (2, 3, 5, 7, 11)])
def test_sign_relation_sums_to_zero(v):
    z = generators_from_volume_vector(v)
    s = check_sign_relation(z)
    assert s[0] == 1
    for row in z.generators:
        assert sum(si * vi * x for si, vi, x in zip(s, v, row)) == 0
    for v_, cols in TIGHT_GENERATORS.items():
        zz = Zonotope.from_columns(cols)
        s = check_sign_relation(zz)
        assert all(sum(si * vi * c[k] for si, vi, c in zip(s, v_, cols)) == 0 for k in range(3))


def test_square_facets():
    p = facet_inequalities(Zonotope.from_columns([(1, 0), (0, 1)]))
    assert sorted(zip(p.a, p.b)) == sorted([((2, 0), 1), ((-2, 0), 1), ((0, 2), 1), ((0, -2), 1)])


def _check_facets(z):
    p = facet_inequalities(z)
    assert p.integral and p.centrally_symmetric()
    pts = sign_points(z)
    for row, b in zip(p.a, p.b):
        values = [sum(a * x for a, x in zip(row, pt)) for pt in pts]
        assert max(values) == b
    assert all(p.contains(pt) for pt in pts)
    return p


@pytest.mark.parametrize("v", sorted(TIGHT_GENERATORS))
def test_facets_of_tight_zonotopes(v):
    p = _check_facets(Zonotope.from_columns(TIGHT_GENERATORS[v]))
    assert len(p.a) == 12


def _volume(z):
    return ConvexHull([[float(x) for x in pt] for pt in sign_points(z)]).volume


@pytest.mark.parametrize("v", [(1, 2, 3, 4), (1, 3, 4, 7), (2, 5, 9, 13), (1, 2, 3), (4, 7, 9)])
def test_volume_equals_sum(v):
    z = generators_from_volume_vector(v)
    _check_facets(z)
    assert _volume(z) == pytest.approx(sum(v), rel=1e-9)


def _shoelace(points):
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return abs(sum(hull[i][0] * hull[i - 1][1] - hull[i - 1][0] * hull[i][1] for i in range(len(hull)))) / 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=3))
def test_planar_area_exact(v):
    if math.gcd(*v) != 1:
        return
    z = generators_from_volume_vector(v)
    assert _shoelace(sign_points(z)) == sum(v)
    _check_facets(z)


def test_hpolytope_helpers():
    sq = HPolytope(((2, 0), (-2, 0), (0, 2), (0, -2)), (1, 1, 1, 1))
    assert sq.dim == 2 and sq.centrally_symmetric()
    assert sq.contains((Fraction(1, 2), 0)) and not sq.contains((1, 0))
    assert sq.dilate(2).contains((1, 0))
    assert not sq.dilate(Fraction(1, 3)).integral
    with pytest.raises(ValueError):
        HPolytope(((1, 0),), (1, 2))
