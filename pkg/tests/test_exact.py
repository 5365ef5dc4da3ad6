from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ratdist.errors import FactorizationLimitExceeded, MixedFieldError
from ratdist.exact import FactorBudget, QuadExt, factorize, is_probable_prime, quad_sqrt, rational_sqrt, squarefree_part

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
squarefree_d = st.sampled_from([2, 3, 5, 6, 7, 10, 13])


@st.composite
def quads(draw, d=None):
    d = d if d is not None else draw(squarefree_d)
    return QuadExt(draw(fractions), draw(fractions), d)


def test_factorize_small():
    assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))
    assert factorize(-7).sign == -1


@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.value() == n
    assert all(is_probable_prime(p) for p, _ in f.factors)


def test_factorize_rho_path():
    n = 1_000_003 * 1_000_033
    assert factorize(n).factors == ((1_000_003, 1), (1_000_033, 1))


def test_factor_budget_exhausted():
    n = 1_000_003 * 1_000_033
    with pytest.raises(FactorizationLimitExceeded):
        factorize(n, FactorBudget(trial_limit=10, rho_iterations=1))


@given(fractions.filter(bool))
def test_squarefree_part(q):
    s, c = squarefree_part(q)
    assert s * c * c == q and c > 0
    assert all(e == 1 for _, e in factorize(s).factors)


@given(fractions)
def test_rational_sqrt_of_square(q):
    assert rational_sqrt(q * q) == abs(q)


def test_rational_sqrt_nonsquare():
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


def test_quadext_normalizes_rational():
    assert QuadExt(3, 0, 5).d == 1
    assert QuadExt.sqrt(12) == 2 * QuadExt.sqrt(3)
    assert QuadExt.sqrt(Fraction(9, 4)) == Fraction(3, 2)


def test_mixed_field_raises():
    with pytest.raises(MixedFieldError):
        QuadExt.sqrt(2) + QuadExt.sqrt(3)


@given(st.data())
def test_field_axioms(data):
    d = data.draw(squarefree_d)
    x, y, z = (data.draw(quads(d)) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if y:
        assert (x / y) * y == x


@given(quads())
def test_sign_matches_float(x):
    if x:
        assert x.sign() == (1 if float(x) > 0 else -1)


@given(quads())
def test_quad_sqrt_of_square(x):
    r = quad_sqrt(x * x)
    assert r is not None and r * r == x * x and r >= 0


def test_quad_sqrt_nonsquare():
    assert quad_sqrt(QuadExt(1, 1, 2)) is None
    assert quad_sqrt(QuadExt(3, 2, 2)) == QuadExt(1, 1, 2)


@given(quads())
def test_json_roundtrip(x):
    assert QuadExt.from_json(x.to_json()) == x
