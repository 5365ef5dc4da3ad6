from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ratdist.errors import DegenerateConic, NoSolution
from ratdist.exact import squarefree_int
from ratdist.quadforms import INF, Conic, conic_parametrize, conic_point, failing_places, hilbert_symbol, is_isotropic, relevant_places, scaled_point

nonzero = st.integers(min_value=-300, max_value=300).filter(bool)


def test_hilbert_known_values():
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(3, 5, 3) == -1
    assert hilbert_symbol(3, 5, 5) == -1
    assert hilbert_symbol(2, 7, 7) == 1


@given(nonzero, nonzero)
def test_product_formula(a, b):
    prod = 1
    for v in relevant_places(a, b):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


@given(nonzero, nonzero, st.integers(min_value=1, max_value=20))
def test_hilbert_square_classes(a, b, c):
    for v in relevant_places(a * c * c, b):
        assert hilbert_symbol(a * c * c, b, v) == hilbert_symbol(a, b, v)


def test_isotropy_examples():
    assert is_isotropic(1, 3)
    assert not is_isotropic(3, 5)
    assert failing_places(3, 5) == [3, 5]
    assert not is_isotropic(-1, -1)


@given(nonzero, nonzero)
def test_conic_point_solves(a, b):
    if not is_isotropic(a, b):
        with pytest.raises(NoSolution):
            conic_point(a, b)
        return
    pt = conic_point(a, b)
    A, B = squarefree_int(a), squarefree_int(b)
    assert A * pt.x**2 + B * pt.y**2 == pt.z**2
    assert (pt.x, pt.y, pt.z) != (0, 0, 0)
    x, y, z = scaled_point(a, b)
    assert a * x * x + b * y * y == z * z


def test_conic_point_witness():
    assert conic_point(1, 3).as_tuple() == (1, 1, 2)


def test_conic_parametrization_stays_on_conic():
    c = Conic.of(1, 0, 1, 0, 0, -1)
    param = conic_parametrize(c, (1, 0))
    for t in (Fraction(1, 2), Fraction(-3), Fraction(5, 7)):
        x, y = param(t)
        assert x * x + y * y == 1


def test_degenerate_conic_rejected():
    with pytest.raises(DegenerateConic):
        conic_parametrize(Conic.of(1, 0, -1, 0, 0, 0), (1, 1))
