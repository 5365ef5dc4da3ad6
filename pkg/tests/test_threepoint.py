from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from ratdist.errors import Collinear, DegeneratePair, NotAdmissible, RatDistError
from ratdist.exact import QuadExt
from ratdist.geometry import Triangle
from ratdist.threepoint import (
    alt_section,
    collinear_solution,
    cubic_add,
    cubic_eval,
    cubic_mul,
    cubic_third_intersection,
    fiber,
    fiber_points,
    frame,
    generate3,
    generate_alt,
    non_torsion_rate,
    section_AplusB,
    sections,
    unit_conic_points,
    verify3,
)

RIGHT = Triangle.from_points((0, 0), (3, 0), (0, 4))


@pytest.fixture(scope="module")
def f():
    return frame(RIGHT)


def test_frame_values(f):
    assert (f.p, f.pprime, f.s, f.r, f.c) == (9, 16, 0, 16, 0)


def test_frame_errors():
    with pytest.raises(Collinear):
        frame(Triangle.from_points((0, 0), (1, 0), (2, 0)))
    with pytest.raises(NotAdmissible):
        frame(Triangle.from_sides_sq(3, 5, 8))


def test_sections_on_cubic(f):
    fp = fiber(f, Fraction(2, 5), Fraction(17, 5))
    sec = sections(f, fp)
    for pt in sec.values():
        assert cubic_eval(f, fp, pt) == 0
    A, B, C, N = (sec[k] for k in "ABCN")
    assert cubic_third_intersection(f, fp, A, B) == C
    assert cubic_third_intersection(f, fp, A, A) == N
    assert cubic_add(f, fp, C, C) == N
    assert cubic_add(f, fp, A, C) == B and cubic_add(f, fp, B, C) == A
    assert section_AplusB(f, fp) == cubic_add(f, fp, A, B) == (927, 1096, -221)


def test_group_law_on_many_fibers(f):
    for fp in itertools.islice(fiber_points(f, 40, seed=3), 15):
        try:
            sec = sections(f, fp)
        except RatDistError:
            continue
        A, B, C = sec["A"], sec["B"], sec["C"]
        add = lambda P, Q: cubic_add(f, fp, P, Q)  # noqa: E731
        assert add(A, B) == add(B, A)
        assert add(add(A, B), C) == add(A, add(B, C))
        assert cubic_mul(f, fp, 3, A) == add(A, add(A, A))
        assert add(A, sec["N"]) == A


def test_generate3_count_and_exactness(f):
    sols = list(generate3(f, fibers=5, multiples=6))
    assert len(sols) >= 20
    assert len({(s.tcoord, s.ucoord) for s in sols}) == len(sols)
    for s in sols:
        assert verify3(f, s.tcoord, s.ucoord, s.d0, s.d, s.dprime)
        assert s.Q is not None and s.Q.norm2() == s.d0**2


def test_generate3_irrational_frame():
    t = Triangle.from_points((0, 0), (1, 0), (0, QuadExt.sqrt(3)))
    sols = list(generate3(t, fibers=3, multiples=4))
    assert sols
    for s in sols:
        assert s.Q.norm2() == s.d0**2
        assert (s.Q - t.points[1]).norm2() == s.d**2 and (s.Q - t.points[2]).norm2() == s.dprime**2


def test_non_torsion_rate(f):
    assert non_torsion_rate(f, fibers=100, multiples=6) >= 0.9


def test_alt_section(f):
    sol = alt_section(f, Fraction(1, 5), Fraction(1, 5))
    assert verify3(f, sol.tcoord, sol.ucoord, sol.d0, sol.d, sol.dprime)
    pts = list(unit_conic_points(f, 10))
    assert all(f.p * a * a + f.r * b * b == 1 for a, b in pts)
    assert len(list(generate_alt(f, 10))) == 10
    with pytest.raises(ValueError):
        alt_section(f, 1, 1)


def test_collinear_reference():
    s = collinear_solution(1, 2, 3, 1)
    assert s.tcoord == Fraction(17, 10) and s.ucoord == Fraction(3, 5) * QuadExt.sqrt(2)
    assert (s.d0, s.d, s.dprime) == (Fraction(19, 10), Fraction(11, 10), Fraction(9, 10))
    with pytest.raises(DegeneratePair):
        collinear_solution(1, 2, 1, 2)
