"""Bounded search for points at rational distance from three or more given points."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import CoincidentPoints, Collinear
from .exact import QuadExt
from .geometry import PlanePoint

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Candidate:
    affine: tuple[Fraction, Fraction]
    Q: PlanePoint
    distances: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "affine": [str(v) for v in self.affine],
            "Q": [self.Q.x.to_json(), self.Q.y.to_json()],
            "distances": [str(v) for v in self.distances],
        }


def rationals_up_to_height(H: int) -> list[Fraction]:
    """All p/q in lowest terms with |p| <= H and 1 <= q <= H."""
    out = {Fraction(0)}
    for q in range(1, H + 1):
        for p in range(1, H + 1):
            if gcd(p, q) == 1:
                out.add(Fraction(p, q))
                out.add(Fraction(-p, q))
    return sorted(out)


def _rational(v: QuadExt) -> Fraction | None:
    return v.a if v.is_rational else None


def affine_frame(points: list[PlanePoint]):
    """Gram entries of e1 = P1 - P0, e2 = P2 - P0 and affine coordinates of every point, or None if irrational."""
    if len(set(points)) != len(points):
        raise CoincidentPoints("repeated points")
    if len(points) < 3:
        raise ValueError("at least three points are needed")
    e1, e2 = points[1] - points[0], points[2] - points[0]
    g = [_rational(v) for v in (e1.norm2(), e1.dot(e2), e2.norm2())]
    if None in g:
        return None
    g11, g12, g22 = g
    det = g11 * g22 - g12 * g12
    if det == 0:
        raise Collinear("the first three points are collinear")
    coords = []
    for P in points:
        w = P - points[0]
        b1, b2 = _rational(w.dot(e1)), _rational(w.dot(e2))
        if b1 is None or b2 is None:
            return None
        c1, c2 = (g22 * b1 - g12 * b2) / det, (g11 * b2 - g12 * b1) / det
        if points[0] + e1 * c1 + e2 * c2 != P:
            return None  # P is not in the plane spanned over Q by the frame
        coords.append((c1, c2))
    return (g11, g12, g22), coords


def search_points(points: list[PlanePoint], H: int) -> list[Candidate]:
    """Every Q = P0 + x e1 + y e2 with x, y of height <= H at rational distance from all points.

    A configuration whose pairwise Gram data is irrational has no such Q in a
    dense set, and the search returns the empty list at once.
    """
    frame = affine_frame(points)
    if frame is None:
        log.info("irrational Gram data: no rational-distance points to search for")
        return []
    (g11, g12, g22), coords = frame
    L = lcm(g11.denominator, (2 * g12).denominator, g22.denominator)
    A, B, C = int(g11 * L), int(2 * g12 * L), int(g22 * L)
    M = lcm(*(c.denominator for pair in coords for c in pair))
    shifts = [(int(c1 * M), int(c2 * M)) for c1, c2 in coords]
    values = rationals_up_to_height(H)
    e1, e2 = points[1] - points[0], points[2] - points[0]
    found = []
    for x in values:
        p1, q1 = x.numerator, x.denominator
        for y in values:
            p2, q2 = y.numerator, y.denominator
            qq = q1 * q2
            X0, Y0 = p1 * q2 * M, p2 * q1 * M
            for s1, s2 in shifts:
                X, Y = X0 - s1 * qq, Y0 - s2 * qq
                F = (A * X * X + B * X * Y + C * Y * Y) * L
                r = isqrt(F)
                if r * r != F:
                    break
            else:
                Q = points[0] + e1 * x + e2 * y
                dists = []
                for P in points:
                    d2 = _rational((Q - P).norm2())
                    root = Fraction(isqrt(d2.numerator), isqrt(d2.denominator))
                    assert root * root == d2
                    dists.append(root)
                found.append(Candidate((x, y), Q, tuple(dists)))
    return found
