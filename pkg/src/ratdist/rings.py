"""Points with coordinates and distances in Z[sqrt(delta)] or in Z[i]."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .errors import AutomorphNotFound, PerfectSquareDelta
from .exact import QuadExt, factorize, fmt_rational, quad_sqrt, squarefree_part

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- Z[sqrt(delta)]


@dataclass(frozen=True)
class RealQuadInt:
    """``a + b*sqrt(delta)`` with integer a, b and nonsquare delta > 1."""

    a: int
    b: int
    delta: int

    def to_quad(self) -> QuadExt:
        s, c = squarefree_part(self.delta)
        return QuadExt(self.a, self.b * c, s)

    @classmethod
    def from_quad(cls, x: QuadExt, delta: int) -> RealQuadInt:
        """Inverse of ``to_quad``; raises ValueError when x is not in Z[sqrt(delta)]."""
        s, c = squarefree_part(delta)
        if x.b and x.d != s:
            raise ValueError(f"{x} is not in Q(sqrt({delta}))")
        b = Fraction(x.b) / c
        if x.a.denominator != 1 or b.denominator != 1:
            raise ValueError(f"{x} is not integral in Z[sqrt({delta})]")
        return cls(int(x.a), int(b), delta)

    def __mul__(self, o: RealQuadInt) -> RealQuadInt:
        return RealQuadInt(self.a * o.a + self.delta * self.b * o.b, self.a * o.b + self.b * o.a, self.delta)

    def __pow__(self, n: int) -> RealQuadInt:
        out = RealQuadInt(1, 0, self.delta)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> RealQuadInt:
        return RealQuadInt(self.a, -self.b, self.delta)

    def norm(self) -> int:
        return self.a * self.a - self.delta * self.b * self.b

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "delta": self.delta}

    def __str__(self) -> str:
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt{self.delta}"


def in_ring(x: QuadExt, delta: int) -> bool:
    try:
        RealQuadInt.from_quad(x, delta)
    except ValueError:
        return False
    return True


def fundamental_unit(delta: int) -> RealQuadInt:
    """Smallest x + y sqrt(delta) > 1 with x^2 - delta y^2 = +-1, from the continued fraction of sqrt(delta)."""
    root = isqrt(delta)
    if delta <= 1 or root * root == delta:
        raise PerfectSquareDelta(f"{delta} is a perfect square")
    m, d, a = 0, 1, root
    h_prev, h = 1, root
    k_prev, k = 0, 1
    while h * h - delta * k * k not in (1, -1):
        m = d * a - m
        d = (delta - m * m) // d
        a = (root + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return RealQuadInt(h, k, delta)


def _unit_inverse(w: RealQuadInt) -> RealQuadInt:
    c = w.conj()
    return c if w.norm() == 1 else RealQuadInt(-c.a, -c.b, w.delta)


def unit_orbit_step(delta: int, max_exponent: int = 6) -> tuple[RealQuadInt, int]:
    """(eps^m, m) for the least m <= max_exponent with eps^m = 1 mod 2."""
    eps = fundamental_unit(delta)
    for m in range(1, max_exponent + 1):
        w = eps**m
        if (w.a - 1) % 2 == 0 and w.b % 2 == 0:
            return w, m
    raise AssertionError(f"no power of {eps} up to {max_exponent} is 1 mod 2")


@dataclass(frozen=True)
class RingLinePoint:
    Q: tuple[QuadExt, QuadExt]
    dO: QuadExt
    dP: QuadExt
    omega: RealQuadInt
    exponent: int
    degenerate: bool = False

    def to_json(self, delta: int) -> dict:
        enc = lambda v: RealQuadInt.from_quad(v, delta).to_json()  # noqa: E731
        return {
            "Q": [enc(self.Q[0]), enc(self.Q[1])],
            "dO": enc(self.dO),
            "dP": enc(self.dP),
            "omega": self.omega.to_json(),
            "j": self.exponent,
            "degenerate": self.degenerate,
        }


def verify_ring_point(O, P, Q, dO, dP, delta: int) -> bool:
    ox, oy = (QuadExt.coerce(Fraction(v)) for v in O)
    px, py = (QuadExt.coerce(Fraction(v)) for v in P)
    x, y = Q
    return (
        all(in_ring(v, delta) for v in (x, y, dO, dP))
        and (x - ox) ** 2 + (y - oy) ** 2 == dO * dO
        and (x - px) ** 2 + (y - py) ** 2 == dP * dP
    )


def realquad_line_points(O, P, delta: int, count: int) -> Iterator[RingLinePoint]:
    """Points on the line through P perpendicular to the x-axis (or to the y-axis when P - O is vertical).

    With O at the origin and Q = (a, t): ``(s - t)(s + t) = a^2``, solved by
    ``s + t = a*omega`` and ``s - t = a/omega`` for units omega = 1 mod 2.
    """
    O = tuple(Fraction(v) for v in O)
    P = tuple(Fraction(v) for v in P)
    a, b = P[0] - O[0], P[1] - O[1]
    swap = a == 0
    if swap:
        a, b = b, a
    if a == 0 or any(v.denominator != 1 for v in (*O, *P)):
        raise ValueError("O and P must be distinct integer points")
    step, _ = unit_orbit_step(delta)
    exponents = itertools.chain([0], itertools.chain.from_iterable((j, -j) for j in itertools.count(1)))
    emitted = 0
    for j in exponents:
        if emitted >= count:
            return
        w = step ** abs(j)
        omega = w if j >= 0 else _unit_inverse(w)
        om, inv = omega.to_quad(), _unit_inverse(omega).to_quad()
        s = a * (om + inv) / 2
        t = a * (om - inv) / 2
        x, y = (t, QuadExt(a)) if swap else (QuadExt(a), t)
        Q = (x + O[0], y + O[1])
        dO, dP = abs(s), abs(t - b)
        assert verify_ring_point(O, P, Q, dO, dP, delta), (Q, dO, dP)
        yield RingLinePoint(Q, dO, dP, omega, j, degenerate=(dP == 0 or dO == 0))
        emitted += 1


def _ring_sqrt(x: QuadExt, delta: int) -> QuadExt | None:
    r = quad_sqrt(x)
    return r if r is not None and in_ring(r, delta) else None


def relative_automorph(D: QuadExt, delta: int, bound: int = 2000) -> tuple[QuadExt, QuadExt]:
    """(e, f) in Z[sqrt(delta)] with ``e^2 - D f^2 = 1`` and f != 0, by bounded search.

    In an embedding where D < 0 the equation forces |f| <= 1/sqrt(-D), so f
    hugs a multiple of sqrt(delta) there and the search is one-dimensional.
    """
    s, c = squarefree_part(delta)
    rd = math.sqrt(delta)
    real, conj = float(D), float(D.conj())
    if real < 0 and conj < 0:
        raise AutomorphNotFound("both embeddings of D are negative: the norm form is definite")

    def candidates():
        if real > 0 and conj > 0:
            for h in range(1, bound + 1):
                for f1, f2 in itertools.product(range(-h, h + 1), range(0, h + 1)):
                    if max(abs(f1), f2) == h:
                        yield f1, f2
            return
        sign = 1 if conj < 0 else -1  # conj < 0 wants f1 - f2*rd small, real < 0 wants f1 + f2*rd small
        eps = 1 / math.sqrt(-(conj if conj < 0 else real))
        for f2 in range(1, bound + 1):
            centre = sign * f2 * rd
            for f1 in range(math.floor(centre - eps) - 1, math.ceil(centre + eps) + 2):
                yield f1, f2

    for f1, f2 in candidates():
        f = QuadExt(f1, f2 * c, s)
        if f == 0:
            continue
        e = _ring_sqrt(1 + D * f * f, delta)
        if e is not None:
            return e, f
    raise AutomorphNotFound(f"no relative unit for D = {D} with |f| coefficients <= {bound}")


@dataclass(frozen=True)
class RingConfocalPoint:
    Q: tuple[QuadExt, QuadExt]
    dO: QuadExt
    dP: QuadExt
    power: int
    flipped: bool


def realquad_confocal_extend(O, P, seed: RingLinePoint, count: int, delta: int, max_power: int = 24, bound: int = 2000) -> Iterator[RingConfocalPoint]:
    """Further integral points on the confocal conic of O, P through ``seed``.

    In the axis frame ``X = 2(P-O).Q - n``, ``Y = 2 (P-O) x Q`` (n = |P-O|^2) the
    conic reads ``D X^2 - k^2 Y^2 = n D k^2`` with ``D = n - k^2``; a relative
    unit ``e + f sqrt(D)`` acts on it, and the integral images are kept.  The
    half-turn about the midpoint of OP (swapping the two distances) is applied
    to each point as well.
    """
    if count <= 0:
        return
    O = tuple(QuadExt(Fraction(v)) for v in O)
    P = tuple(QuadExt(Fraction(v)) for v in P)
    a, b = P[0] - O[0], P[1] - O[1]
    n = a * a + b * b
    x0, y0 = seed.Q[0] - O[0], seed.Q[1] - O[1]
    k = seed.dO - seed.dP  # the hyperbola through the seed
    D = n - k * k
    if k == 0 or D == 0:
        log.warning("seed %s lies on a degenerate confocal conic (k = %s)", seed.Q, k)
        return
    try:
        e, f = relative_automorph(D, delta, bound)
    except AutomorphNotFound as exc:
        log.warning("confocal extension skipped: %s", exc)
        return

    def point(X, Y):
        xi, zeta = (X + n) / 2, Y / 2
        x, y = (a * xi - b * zeta) / n, (b * xi + a * zeta) / n
        z = (2 * xi - D) / (2 * k)
        return x, y, z, z - k

    seen = {(x0, y0)}
    emitted = 0
    X0, Y0 = 2 * (a * x0 + b * y0) - n, 2 * (a * y0 - b * x0)
    for sign in (1, -1):
        X, Y = X0, Y0
        ff = f * sign
        for m in range(1, max_power + 1):
            X, Y = e * X + ff * k * Y, (ff * D / k) * X + e * Y
            x, y, z, w = point(X, Y)
            for flipped, (qx, qy, dz, dw) in ((False, (x, y, z, w)), (True, (a - x, b - y, w, z))):
                if (qx, qy) in seen or not all(in_ring(v, delta) for v in (qx, qy, dz, dw)):
                    continue
                Q = (qx + O[0], qy + O[1])
                assert verify_ring_point((O[0].a, O[1].a), (P[0].a, P[1].a), Q, abs(dz), abs(dw), delta)
                seen.add((qx, qy))
                yield RingConfocalPoint(Q, abs(dz), abs(dw), sign * m, flipped)
                emitted += 1
                if emitted >= count:
                    return


# ---------------------------------------------------------------- Z[i]


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def __add__(self, o) -> GaussianInt:
        o = _g(o)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, o) -> GaussianInt:
        return self + (-_g(o))

    def __rsub__(self, o) -> GaussianInt:
        return _g(o) - self

    def __mul__(self, o) -> GaussianInt:
        o = _g(o)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GaussianInt:
        out = GaussianInt(1, 0)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def divides(self, o) -> bool:
        o = _g(o)
        n = self.norm()
        num = o * self.conj()
        return n != 0 and num.re % n == 0 and num.im % n == 0

    def exact_div(self, o) -> GaussianInt:
        """self / o, which must be a Gaussian integer."""
        o = _g(o)
        n = o.norm()
        num = self * o.conj()
        if n == 0 or num.re % n or num.im % n:
            raise ValueError(f"{o} does not divide {self}")
        return GaussianInt(num.re // n, num.im // n)

    def round_div(self, o) -> GaussianInt:
        o = _g(o)
        n = o.norm()
        num = self * o.conj()
        return GaussianInt(_round_div(num.re, n), _round_div(num.im, n))

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        return f"{self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i"


I = GaussianInt(0, 1)


def _g(x) -> GaussianInt:
    return x if isinstance(x, GaussianInt) else GaussianInt(int(x), 0)


def _round_div(a: int, n: int) -> int:
    return (2 * a + n) // (2 * n)


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    while b:
        a, b = b, a - b * a.round_div(b)
    return a


def gaussian_sqrt(w: GaussianInt) -> GaussianInt | None:
    """A Gaussian integer whose square is w, or None."""
    n = isqrt(w.norm())
    if n * n != w.norm():
        return None
    for x2 in ((n + w.re) // 2,):
        if (n + w.re) % 2:
            return None
        x = isqrt(x2)
        if x * x != x2:
            return None
        y2 = n - x2
        y = isqrt(y2)
        if y * y != y2:
            return None
        for cand in (GaussianInt(x, y), GaussianInt(x, -y)):
            if cand * cand == w:
                return cand
    return None


def _split_prime(p: int) -> GaussianInt:
    """A Gaussian prime above a rational prime p = 1 mod 4."""
    for g in range(2, p):
        if pow(g, (p - 1) // 2, p) == p - 1:
            root = pow(g, (p - 1) // 4, p)
            return gaussian_gcd(GaussianInt(p, 0), GaussianInt(root, 1))
    raise AssertionError(p)


def gaussian_factor(alpha: GaussianInt) -> tuple[GaussianInt, list[tuple[GaussianInt, int]]]:
    """alpha = unit * prod(pi^e) over Gaussian primes."""
    if not alpha:
        raise ValueError("cannot factor 0")
    rest = alpha
    out: list[tuple[GaussianInt, int]] = []
    for p, _ in factorize(alpha.norm()).factors:
        if p == 2:
            primes = [GaussianInt(1, 1)]
        elif p % 4 == 3:
            primes = [GaussianInt(p, 0)]
        else:
            pi = _split_prime(p)
            primes = [pi, pi.conj()]
        for pi in primes:
            e = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                e += 1
            if e:
                out.append((pi, e))
    assert rest.norm() == 1
    return rest, out


def square_split(alpha: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """(rho, xi) with alpha = rho * xi^2 and rho squarefree (unit included)."""
    unit, factors = gaussian_factor(alpha)
    rho, xi = unit, GaussianInt(1, 0)
    for pi, e in factors:
        rho = rho * pi ** (e % 2)
        xi = xi * pi ** (e // 2)
    assert rho * xi * xi == alpha
    return rho, xi


@dataclass(frozen=True)
class GaussianSystem:
    alpha: GaussianInt
    d1: GaussianInt
    d2: GaussianInt
    rs: tuple[GaussianInt, GaussianInt]
    uv: tuple[GaussianInt, GaussianInt]

    def check(self, rs=None, uv=None) -> bool:
        r, s = rs or self.rs
        u, v = uv or self.uv
        return self.d1 * r * r - self.d2 * s * s == self.alpha and self.d1 * u * u - self.d2 * v * v == self.alpha.conj()

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "d1": self.d1.to_json(),
            "d2": self.d2.to_json(),
            "rs": [g.to_json() for g in self.rs],
            "uv": [g.to_json() for g in self.uv],
        }


def _nonsquare_ratio(d1: GaussianInt, d2: GaussianInt) -> bool:
    # d2/d1 is a square in Q(i) iff d1*d2 is a square in Z[i]
    return gaussian_sqrt(d1 * d2) is None


def gaussian_decompose(alpha: GaussianInt) -> GaussianSystem:
    if not alpha:
        raise ValueError("alpha must be nonzero")
    if isqrt(alpha.norm()) ** 2 != alpha.norm():
        one, zero = GaussianInt(1, 0), GaussianInt(0, 0)
        sys = GaussianSystem(alpha, alpha, alpha.conj(), (one, zero), (zero, I))
        assert sys.check() and _nonsquare_ratio(sys.d1, sys.d2)
        return sys
    rho, xi = square_split(alpha)
    if rho.im == 0:
        scale, gap, uv = GaussianInt(1, 0), rho.re, (xi.conj(), xi.conj())
    elif rho.re == 0:
        scale, gap, uv = I, rho.im, (I * xi.conj(), I * xi.conj())
    else:
        raise AssertionError(f"squarefree part {rho} of a norm-square element is neither real nor imaginary")
    for m2 in itertools.count(2):
        d1, d2 = scale * (gap + m2), scale * m2
        if d1 and _nonsquare_ratio(d1, d2):
            break
    sys = GaussianSystem(alpha, d1, d2, (xi, xi), uv)
    assert sys.check()
    return sys


def pell_gaussian(D: GaussianInt, bound: int = 200) -> tuple[GaussianInt, GaussianInt]:
    """(A, B) with A^2 - D B^2 = 1 and B != 0, components of B at most ``bound``; shells of growing size."""
    for h in range(1, bound + 1):
        for b1 in range(-h, h + 1):
            for b2 in ((-h, h) if abs(b1) < h else range(-h, h + 1)):
                B = GaussianInt(b1, b2)
                A = gaussian_sqrt(1 + D * B * B)
                if A is not None:
                    return A, B
    raise AutomorphNotFound(f"no A^2 - ({D}) B^2 = 1 with |B| components <= {bound}")


@dataclass(frozen=True)
class GaussianSolution:
    n: int
    m: int
    rs: tuple[GaussianInt, GaussianInt]
    uv: tuple[GaussianInt, GaussianInt]
    w1: GaussianInt
    w2: GaussianInt
    z: GaussianInt
    k: GaussianInt
    point: tuple[GaussianInt, GaussianInt] | None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "w1": self.w1.to_json(),
            "w2": self.w2.to_json(),
            "z": self.z.to_json(),
            "k": self.k.to_json(),
            "point": None if self.point is None else [c.to_json() for c in self.point],
        }


def plane_point(w1: GaussianInt, w2: GaussianInt) -> tuple[GaussianInt, GaussianInt] | None:
    """x = (w1 + w2)/2, y = (w1 - w2)/(2i), when both are Gaussian integers."""
    two = GaussianInt(2, 0)
    if not two.divides(w1 - w2):
        return None
    return (w1 + w2).exact_div(two), (w1 - w2).exact_div(GaussianInt(0, 2))


def _orbit(pair, A, B, d1, d2, steps: int):
    """pair, M pair, M^2 pair, ... and the inverse direction, interleaved with their exponents."""
    fwd = bwd = pair
    yield 0, pair
    for j in range(1, steps + 1):
        fwd = (A * fwd[0] + d2 * B * fwd[1], d1 * B * fwd[0] + A * fwd[1])
        bwd = (A * bwd[0] - d2 * B * bwd[1], -d1 * B * bwd[0] + A * bwd[1])
        yield j, fwd
        yield -j, bwd


def gaussian_orbit(sys: GaussianSystem, count: int, bound: int = 200) -> Iterator[GaussianSolution]:
    """Orbit solutions of both base equations under the automorph, combined diagonally."""
    if count <= 0:
        return
    try:
        A, B = pell_gaussian(sys.d1 * sys.d2, bound)
    except AutomorphNotFound as exc:
        log.warning("orbit truncated to the base solution: %s", exc)
        A, B = GaussianInt(1, 0), GaussianInt(0, 0)
    steps = 0 if not B else count
    left = list(_orbit(sys.rs, A, B, sys.d1, sys.d2, steps))
    right = list(_orbit(sys.uv, A, B, sys.d1, sys.d2, steps))
    seen = set()
    emitted = 0
    alpha = sys.alpha
    for total in range(len(left) + len(right)):
        for i in range(total + 1):
            j = total - i
            if i >= len(left) or j >= len(right):
                continue
            (n, rs), (m, uv) = left[i], right[j]
            if not sys.check(rs, uv):
                raise AssertionError(f"orbit element ({n}, {m}) broke the base equations")
            r, s = rs
            u, v = uv
            w1, w2 = sys.d1 * r * r, sys.d1 * u * u
            if (w1, w2) in seen:
                continue
            seen.add((w1, w2))
            z = sys.d1 * r * u
            k = z - sys.d2 * s * v
            assert w1 * w2 == z * z and (w1 - alpha) * (w2 - alpha.conj()) == (z - k) * (z - k)
            pt = plane_point(w1, w2)
            if pt is not None:
                x, y = pt
                a, b = GaussianInt(alpha.re, 0), GaussianInt(alpha.im, 0)
                assert x * x + y * y == z * z and (x - a) * (x - a) + (y - b) * (y - b) == (z - k) * (z - k)
            yield GaussianSolution(n, m, rs, uv, w1, w2, z, k, pt)
            emitted += 1
            if emitted >= count:
                return
