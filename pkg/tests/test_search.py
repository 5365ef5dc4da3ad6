from __future__ import annotations

from fractions import Fraction

import pytest

from ratdist.errors import CoincidentPoints, Collinear
from ratdist.exact import QuadExt
from ratdist.geometry import PlanePoint as P, Triangle
from ratdist.search import rationals_up_to_height, search_points
from ratdist.threepoint import frame, verify3


def test_rationals_up_to_height():
    vals = rationals_up_to_height(3)
    assert len(vals) == len(set(vals)) == 1 + 2 * 7
    assert Fraction(-3, 2) in vals and Fraction(2, 3) in vals


def test_unit_square_small_heights_empty():
    assert search_points([P(0, 0), P(1, 0), P(1, 1), P(0, 1)], 12) == []


def test_three_points_found_are_solutions():
    pts = [P(0, 0), P(3, 0), P(0, 4)]
    found = search_points(pts, 8)
    assert found
    for c in found:
        assert all((c.Q - p).norm2() == d * d for p, d in zip(pts, c.distances))


def test_consistency_with_three_point_verifier():
    """With three points the hits are exactly verified three-point solutions."""
    f = frame(Triangle.from_points((0, 0), (1, 0), (0, 1)))
    found = search_points([P(0, 0), P(1, 0), P(0, 1)], 15)
    assert found
    for c in found:
        x, y = c.affine  # the frame of the unit right triangle is the standard one
        assert verify3(f, x, y, *c.distances)


def test_irrational_gram_is_empty():
    assert search_points([P(0, 0), P(QuadExt.sqrt(3), 0), P(0, 1), P(1, 1)], 5) == []


def test_degenerate_inputs():
    with pytest.raises(CoincidentPoints):
        search_points([P(0, 0), P(0, 0), P(1, 1)], 3)
    with pytest.raises(Collinear):
        search_points([P(0, 0), P(1, 0), P(2, 0)], 3)
