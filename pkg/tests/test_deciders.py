from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ratdist.deciders import Reason, check_condition_iv, decide_rational_density, decide_square_density, is_admissible_transform
from ratdist.errors import CoincidentPoints, RatDistError, SingularMatrix
from ratdist.exact import QuadExt
from ratdist.geometry import Triangle, gram_frame, iwasawa_data, j_membership, orthogonal_basis

S3, S5 = QuadExt.sqrt(3), QuadExt.sqrt(5)


def test_rational_triangle_dense():
    assert decide_rational_density(Triangle.from_points((0, 0), (3, 0), (0, 4))).dense


def test_sqrt3_example_witness():
    v = decide_rational_density(Triangle.from_points((0, 0), (1, 0), (0, S3)))
    assert v.dense and v.certificate["witness"].as_tuple() == (1, 1, 2)


def test_pentagon_not_dense():
    v = decide_rational_density(Triangle.from_sides_sq(1, 1, (3 + S5) / 2))
    assert not v.dense and v.reason is Reason.GramIrrational


def test_sqrt3_sqrt5_not_dense():
    v = decide_rational_density(Triangle.from_sides_sq(3, 5, 8))
    assert not v.dense and v.certificate["failing_places"] == [3, 5]
    assert decide_square_density(Triangle.from_sides_sq(3, 5, 8)).dense


def test_collinear_branches():
    assert decide_rational_density(Triangle.from_points((0, 0), (1, 0), (3, 0))).reason is Reason.CollinearRational
    v = decide_rational_density(Triangle.from_points((0, 0), (1, 0), (S3, 0)))
    assert not v.dense and v.reason is Reason.CollinearIrrational


def test_repeated_vertex():
    with pytest.raises(CoincidentPoints):
        Triangle.from_points((0, 0), (0, 0), (1, 1))


triangles = st.tuples(*[st.tuples(st.integers(-6, 6), st.integers(-6, 6))] * 3)


@settings(max_examples=60, deadline=None)
@given(triangles)
def test_ii_equals_iv_and_origin_invariance(pts):
    try:
        t = Triangle.from_points(*pts)
    except (ValueError, RatDistError):
        return
    verdicts = {decide_rational_density(t, i).dense for i in range(3)}
    assert len(verdicts) == 1
    assert check_condition_iv(t).dense in verdicts


def test_orthogonal_basis_and_membership():
    t = Triangle.from_points((0, 0), (3, 0), (1, 4))
    g = gram_frame(t)
    lat = orthogonal_basis(g, t)
    assert lat.v1.dot(lat.v2) == 0
    assert j_membership(lat.point(Fraction(1, 2), Fraction(3)), lat) == (Fraction(1, 2), Fraction(3))
    iw = iwasawa_data(g)
    assert iw.r == 9 and iw.xi == Fraction(1, 3)


def test_admissible_transforms():
    assert is_admissible_transform([[1, 0], [0, 1]])
    assert is_admissible_transform([[S5 * 2, 0], [0, S5 * 2]])  # 20 = 4^2 + 2^2
    assert not is_admissible_transform([[S3, 0], [0, S3]])
    with pytest.raises(SingularMatrix):
        is_admissible_transform([[1, 2], [2, 4]])
