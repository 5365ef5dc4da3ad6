"""Local-global tools for ternary forms ``a*x^2 + b*y^2 = z^2`` over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import DegenerateConic, NoSolution, SearchExhausted
from .exact import factorize, rational_sqrt, squarefree_part

INF = "inf"
Place = Union[str, int]


@dataclass(frozen=True)
class PlaceSymbolReport:
    place: Place
    symbol: int


@dataclass(frozen=True)
class ConicPoint:
    x: int
    y: int
    z: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def _legendre(a: int, p: int) -> int:
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _split(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def hilbert_symbol(a, b, place: Place) -> int:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    A, _ = squarefree_part(a)
    B, _ = squarefree_part(b)
    if place == INF:
        return -1 if A < 0 and B < 0 else 1
    p = int(place)
    alpha, u = _split(A, p)
    beta, v = _split(B, p)
    if p == 2:
        eps = lambda n: ((n - 1) // 2) % 2  # noqa: E731
        omega = lambda n: ((n * n - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta:
        sign *= _legendre(u, p)
    if alpha:
        sign *= _legendre(v, p)
    return sign


def relevant_places(a, b) -> list[Place]:
    """``inf``, 2, and every odd prime dividing the squarefree parts of a or b."""
    A, _ = squarefree_part(Fraction(a))
    B, _ = squarefree_part(Fraction(b))
    primes = {p for p, _ in factorize(A).factors} | {p for p, _ in factorize(B).factors}
    primes.discard(2)
    return [INF, 2, *sorted(primes)]


def local_report(a, b) -> list[PlaceSymbolReport]:
    return [PlaceSymbolReport(v, hilbert_symbol(a, b, v)) for v in relevant_places(a, b)]


def failing_places(a, b) -> list[Place]:
    return [r.place for r in local_report(a, b) if r.symbol == -1]


def is_isotropic(a, b) -> bool:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("degenerate form")
    if a < 0 and b < 0:
        return False
    return not failing_places(a, b)


def _holzer_box(A: int, B: int) -> list[ConicPoint]:
    """Primitive solutions of ``A x^2 + B y^2 = z^2`` with x, y, z >= 0 inside Holzer's box.

    With g = gcd(A, B) one has g | z; writing z = g w turns the form into
    ``A' x^2 + B' y^2 - g w^2`` with pairwise coprime squarefree coefficients,
    whose nontrivial zeros (if any) include one with |x| <= sqrt|B' g| and
    |y| <= sqrt|A' g|.
    """
    g = gcd(A, B)
    a1, b1 = A // g, B // g
    out = []
    for x in range(isqrt(abs(b1 * g)) + 1):
        for y in range(isqrt(abs(a1 * g)) + 1):
            if x == 0 and y == 0:
                continue
            z2 = A * x * x + B * y * y
            if z2 < 0:
                continue
            z = isqrt(z2)
            if z * z == z2:
                c = gcd(gcd(x, y), z)
                out.append(ConicPoint(x // c, y // c, z // c))
    return out


def conic_point(a, b) -> ConicPoint:
    """Primitive integral solution of ``A x^2 + B y^2 = z^2``, A, B the squarefree parts.

    Witnesses with ``x*y*z != 0`` are preferred, then points with z != 0;
    ties go to the smallest z, then the smallest positive x.
    """
    if not is_isotropic(a, b):
        raise NoSolution(f"{a}*x^2 + {b}*y^2 = z^2 has only the trivial solution")
    A, _ = squarefree_part(Fraction(a))
    B, _ = squarefree_part(Fraction(b))
    found = _holzer_box(A, B)
    if not found:
        raise SearchExhausted(f"no point in Holzer's box for ({A}, {B}); isotropy says one exists")
    return min(found, key=lambda pt: (pt.x * pt.y * pt.z == 0, pt.z == 0, pt.z, pt.x == 0, pt.x, pt.y))


def scaled_point(a, b) -> tuple[Fraction, Fraction, Fraction]:
    """A rational solution of ``a x^2 + b y^2 = z^2`` for the original a, b."""
    pt = conic_point(a, b)
    _, ca = squarefree_part(Fraction(a))
    _, cb = squarefree_part(Fraction(b))
    return Fraction(pt.x) / ca, Fraction(pt.y) / cb, Fraction(pt.z)


@dataclass(frozen=True)
class Conic:
    """``A x^2 + B xy + C y^2 + D x + E y + F = 0`` with rational coefficients."""

    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction
    F: Fraction

    @classmethod
    def of(cls, *coeffs) -> Conic:
        return cls(*(Fraction(c) for c in coeffs))

    def __call__(self, x, y) -> Fraction:
        return self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F

    def gradient(self, x, y) -> tuple[Fraction, Fraction]:
        return 2 * self.A * x + self.B * y + self.D, self.B * x + 2 * self.C * y + self.E

    def discriminant(self) -> Fraction:
        """Determinant of the symmetric 3x3 matrix; zero iff degenerate."""
        a, b, c = self.A, self.B / 2, self.C
        d, e, f = self.D / 2, self.E / 2, self.F
        return a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)

    @property
    def degenerate(self) -> bool:
        return self.discriminant() == 0

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)


def rational_roots(c2, c1, c0) -> list[Fraction]:
    c2, c1, c0 = Fraction(c2), Fraction(c1), Fraction(c0)
    if c2 == 0:
        return [] if c1 == 0 else [-c0 / c1]
    s = rational_sqrt(c1 * c1 - 4 * c2 * c0)
    if s is None:
        return []
    return sorted({(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)})


@dataclass(frozen=True)
class ConicParametrization:
    """Pencil of lines ``(x0 + u, y0 + t*u)`` through a rational point of a conic."""

    conic: Conic
    x0: Fraction
    y0: Fraction

    @property
    def exceptional(self) -> list[Fraction]:
        """Slopes whose line meets the conic again only at infinity."""
        return rational_roots(self.conic.C, self.conic.B, self.conic.A)

    def __call__(self, t) -> tuple[Fraction, Fraction] | None:
        t = Fraction(t)
        q = self.conic
        quad = q.A + q.B * t + q.C * t * t
        if quad == 0:
            return None
        gx, gy = q.gradient(self.x0, self.y0)
        u = -(gx + gy * t) / quad
        return self.x0 + u, self.y0 + t * u


def conic_parametrize(conic: Conic, p0) -> ConicParametrization:
    x0, y0 = Fraction(p0[0]), Fraction(p0[1])
    if conic.degenerate:
        raise DegenerateConic(f"{conic} is singular")
    if conic(x0, y0) != 0:
        raise ValueError(f"({x0}, {y0}) is not on the conic")
    if conic.gradient(x0, y0) == (0, 0):
        raise DegenerateConic("conic singular at the base point")
    return ConicParametrization(conic, x0, y0)
