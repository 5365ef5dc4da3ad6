"""Plane configurations and their exact Gram data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CoincidentPoints, Collinear, NotCollinear, NotRationalGram
from .exact import QuadExt, Scalar


@dataclass(frozen=True)
class PlanePoint:
    x: QuadExt
    y: QuadExt

    def __init__(self, x: Scalar, y: Scalar):
        x, y = QuadExt.coerce(x), QuadExt.coerce(y)
        x + y  # raises MixedFieldError on inconsistent fields
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __add__(self, o: PlanePoint) -> PlanePoint:
        return PlanePoint(self.x + o.x, self.y + o.y)

    def __sub__(self, o: PlanePoint) -> PlanePoint:
        return PlanePoint(self.x - o.x, self.y - o.y)

    def __mul__(self, k: Scalar) -> PlanePoint:
        return PlanePoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, o: PlanePoint) -> QuadExt:
        return self.x * o.x + self.y * o.y

    def norm2(self) -> QuadExt:
        return self.dot(self)

    @property
    def is_rational(self) -> bool:
        return self.x.is_rational and self.y.is_rational

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> PlanePoint:
        return cls(QuadExt.from_json(obj["x"]), QuadExt.from_json(obj["y"]))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


ORIGIN = PlanePoint(0, 0)


class Triangle:
    """Three points given either by coordinates or by squared side lengths.

    Side lengths are stored in the order ``(d12sq, d13sq, d23sq)``.
    """

    def __init__(self, points=None, sides_sq=None):
        if (points is None) == (sides_sq is None):
            raise ValueError("give exactly one of points / sides_sq")
        if points is not None:
            pts = tuple(p if isinstance(p, PlanePoint) else PlanePoint(*p) for p in points)
            if len(pts) != 3:
                raise ValueError("a triangle needs three points")
            self.points: tuple[PlanePoint, ...] | None = pts
            d = [(pts[i] - pts[j]).norm2() for i, j in ((0, 1), (0, 2), (1, 2))]
        else:
            self.points = None
            d = [QuadExt.coerce(v) for v in sides_sq]
            if len(d) != 3:
                raise ValueError("three squared sides expected")
        if any(v.sign() <= 0 for v in d):
            raise CoincidentPoints("repeated vertex")
        self.sides_sq: tuple[QuadExt, QuadExt, QuadExt] = tuple(d)
        # 16 * area^2 = 4 * deltasq >= 0 encodes the triangle inequality
        if gram_frame(self, 0).deltasq.sign() < 0:
            raise ValueError("squared sides violate the triangle inequality")

    @classmethod
    def from_points(cls, *points) -> Triangle:
        return cls(points=points)

    @classmethod
    def from_sides_sq(cls, d12, d13, d23) -> Triangle:
        return cls(sides_sq=(d12, d13, d23))

    def side_sq(self, i: int, j: int) -> QuadExt:
        i, j = sorted((i, j))
        return self.sides_sq[{(0, 1): 0, (0, 2): 1, (1, 2): 2}[(i, j)]]

    @property
    def collinear(self) -> bool:
        return gram_frame(self, 0).collinear

    def to_json(self) -> dict:
        if self.points is not None:
            return {"points": [p.to_json() for p in self.points]}
        return {"sides_sq": [v.to_json() for v in self.sides_sq]}

    @classmethod
    def from_json(cls, obj: dict) -> Triangle:
        if "points" in obj:
            return cls(points=[PlanePoint.from_json(p) for p in obj["points"]])
        return cls(sides_sq=[QuadExt.from_json(v) for v in obj["sides_sq"]])

    def __repr__(self) -> str:
        if self.points is not None:
            return "Triangle(" + ", ".join(map(str, self.points)) + ")"
        return "Triangle(sides_sq=" + ", ".join(map(str, self.sides_sq)) + ")"


def frame_indices(origin_index: int) -> tuple[int, int, int]:
    """(origin, P, P') vertex indices; P and P' keep their relative order."""
    if origin_index not in (0, 1, 2):
        raise ValueError("origin_index must be 0, 1 or 2")
    rest = [i for i in range(3) if i != origin_index]
    return origin_index, rest[0], rest[1]


@dataclass(frozen=True)
class GramFrame:
    p: QuadExt
    pprime: QuadExt
    s: QuadExt
    r: QuadExt
    c: QuadExt
    deltasq: QuadExt
    origin_index: int = 0

    @property
    def collinear(self) -> bool:
        return self.deltasq == 0

    @property
    def rational(self) -> bool:
        return self.p.is_rational and self.pprime.is_rational and self.s.is_rational

    def irrational_entry(self) -> tuple[str, QuadExt] | None:
        for name in ("p", "pprime", "s"):
            v = getattr(self, name)
            if not v.is_rational:
                return name, v
        return None


def gram_frame(t: Triangle, origin_index: int = 0) -> GramFrame:
    o, i, j = frame_indices(origin_index)
    p = t.side_sq(o, i)
    pp = t.side_sq(o, j)
    if t.points is not None:
        pts = t.points
        s = (pts[i] - pts[o]).dot(pts[j] - pts[o])
    else:
        s = (p + pp - t.side_sq(i, j)) / 2
    deltasq = p * pp - s * s
    return GramFrame(p=p, pprime=pp, s=s, r=deltasq / p, c=s / p, deltasq=deltasq, origin_index=origin_index)


@dataclass(frozen=True)
class JLattice:
    base: PlanePoint
    v1: PlanePoint
    v2: PlanePoint

    def point(self, t, u) -> PlanePoint:
        return self.base + self.v1 * Fraction(t) + self.v2 * Fraction(u)


@dataclass(frozen=True)
class IwasawaData:
    r: Fraction
    s: Fraction
    xi: Fraction


def _require_rational(g: GramFrame) -> None:
    bad = g.irrational_entry()
    if bad is not None:
        raise NotRationalGram(f"Gram entry {bad[0]} = {bad[1]} is irrational")


def orthogonal_basis(g: GramFrame, t: Triangle) -> JLattice:
    _require_rational(g)
    if g.collinear:
        raise Collinear("collinear configuration has no orthogonal frame")
    if t.points is None:
        raise ValueError("orthogonal basis needs vertex coordinates")
    o, i, j = frame_indices(g.origin_index)
    base = t.points[o]
    v1 = t.points[i] - base
    v2 = (t.points[j] - base) - v1 * g.c
    return JLattice(base, v1, v2)


def j_membership(q: PlanePoint, lat: JLattice) -> tuple[Fraction, Fraction] | None:
    """Coordinates (t, u) with ``q = base + t*v1 + u*v2``, or None when q is not in J."""
    w = q - lat.base
    t = w.dot(lat.v1) / lat.v1.norm2()
    u = w.dot(lat.v2) / lat.v2.norm2()
    if not (t.is_rational and u.is_rational):
        return None
    return t.rational(), u.rational()


def iwasawa_data(g: GramFrame) -> IwasawaData:
    """(r, s, xi) of T = A.D.U read off the Gram matrix: r = g11, xi = g12/g11, s = det/g11."""
    _require_rational(g)
    if g.collinear:
        raise Collinear("Iwasawa data needs a nondegenerate frame")
    g11, g12, g22 = g.p.rational(), g.s.rational(), g.pprime.rational()
    return IwasawaData(r=g11, s=(g11 * g22 - g12 * g12) / g11, xi=g12 / g11)


def collinear_data(t: Triangle, origin_index: int = 0) -> tuple[QuadExt, QuadExt]:
    """(p, q) with P' = q*P and p = |P|^2, measured from the chosen origin."""
    g = gram_frame(t, origin_index)
    if not g.collinear:
        raise NotCollinear("points are not aligned")
    return g.p, g.s / g.p
