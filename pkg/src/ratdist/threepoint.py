"""Rational-distance points for three points via a fibration by plane cubics.

Frame coordinates: with the chosen vertex as origin, ``v1 = P - O`` and ``v2``
the component of ``P' - O`` orthogonal to ``v1``; then ``|x v1 + y v2|^2 =
p x^2 + r y^2`` and ``P'`` sits at ``(c, 1)``.  Writing ``y = lam*x`` and
``z = mu*x`` puts ``(lam, mu)`` on the conic ``mu^2 = p + r lam^2``; each such
fiber carries the cubic ``(pH^2 - K^2)(eta H - mu K') = (p'H^2 - K'^2)(pH - mu K)``
in the unknown signed differences ``k = K/H``, ``k' = K'/H``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

from .deciders import decide_rational_density
from .errors import (
    BZero,
    Collinear,
    DegeneratePair,
    EtaEqualsP,
    ExcludedDenominator,
    KZero,
    LineOnCurve,
    NotAdmissible,
    PointAtInfinity,
    RatDistError,
    SingularPoint,
)
from .exact import QuadExt, fmt_rational, rational_sqrt
from .geometry import JLattice, PlanePoint, Triangle, gram_frame, orthogonal_basis
from .quadforms import scaled_point
from .twopoint import rationals_by_height

log = logging.getLogger(__name__)


# ---------------------------------------------------------------- frame


@dataclass(frozen=True)
class ThreePointFrame:
    p: Fraction
    pprime: Fraction
    s: Fraction
    r: Fraction
    c: Fraction
    lattice: JLattice | None = None
    triangle: Triangle | None = field(default=None, compare=False)
    origin_index: int = 0

    def point(self, x, y) -> PlanePoint | None:
        return None if self.lattice is None else self.lattice.point(x, y)


def frame(t: Triangle, origin_index: int = 0) -> ThreePointFrame:
    g = gram_frame(t, origin_index)
    if g.collinear:
        raise Collinear("collinear triangle: use generate3_collinear")
    verdict = decide_rational_density(t, origin_index)
    if not verdict.dense:
        raise NotAdmissible(f"{verdict.reason.value}: {verdict.certificate}")
    p, pp, s = g.p.rational(), g.pprime.rational(), g.s.rational()
    r, c = g.r.rational(), g.c.rational()
    assert pp == p * c * c + r
    lattice = orthogonal_basis(g, t) if t.points is not None else None
    return ThreePointFrame(p, pp, s, r, c, lattice, t, origin_index)


def frame_from_gram(p, pprime, s) -> ThreePointFrame:
    """Frame straight from Gram entries; no ambient coordinates."""
    p, pp, s = Fraction(p), Fraction(pprime), Fraction(s)
    r = (p * pp - s * s) / p
    if r <= 0 or p <= 0:
        raise Collinear("Gram matrix is not positive definite")
    return ThreePointFrame(p, pp, s, r, s / p)


# ---------------------------------------------------------------- fibers


@dataclass(frozen=True)
class FiberPoint:
    lam: Fraction
    mu: Fraction
    eta: Fraction

    def to_json(self) -> dict:
        return {"lambda": fmt_rational(self.lam), "mu": fmt_rational(self.mu), "eta": fmt_rational(self.eta)}


def fiber(f: ThreePointFrame, lam, mu) -> FiberPoint:
    lam, mu = Fraction(lam), Fraction(mu)
    if mu * mu != f.p + f.r * lam * lam:
        raise ValueError(f"({lam}, {mu}) is not on mu^2 = p + r lam^2")
    return FiberPoint(lam, mu, f.p * f.c + f.r * lam)


def conic_base_point(f: ThreePointFrame) -> tuple[Fraction, Fraction]:
    """A rational point (lam, mu) of ``mu^2 = p + r lam^2``."""
    X, Y, Z = scaled_point(f.p, f.r)
    if X != 0:
        return Y / X, Z / X
    # r is a square rho^2: factor (mu - rho lam)(mu + rho lam) = p
    rho = rational_sqrt(f.r)
    assert rho is not None
    return (f.p - 1) / (2 * rho), (f.p + 1) / 2


def conic_point_at(f: ThreePointFrame, base: tuple[Fraction, Fraction], t) -> tuple[Fraction, Fraction] | None:
    """Second intersection of ``mu - mu0 = t (lam - lam0)`` with the conic."""
    lam0, mu0 = base
    t = Fraction(t)
    if t * t == f.r:
        return None
    step = 2 * (f.r * lam0 - mu0 * t) / (t * t - f.r)
    return lam0 + step, mu0 + t * step


def bad_fiber(f: ThreePointFrame, fp: FiberPoint) -> str | None:
    """Why the cubic over this fiber is reducible or unusable, else None."""
    if fp.mu == 0:
        return "mu = 0"
    if fp.lam == 0:
        return "lam = 0"
    if f.c * fp.lam == 1:
        return "c lam = 1"
    if f.p == f.pprime and (f.c + 1) * fp.lam == 1:
        return "(c + 1) lam = 1"
    if fp.eta == f.p and len({f.p, f.pprime, f.s}) < 3:
        return "eta = p with p, p', s not distinct"
    return None


def fiber_points(f: ThreePointFrame, count: int, seed: int | None = 0) -> Iterator[FiberPoint]:
    """Distinct good fibers from the pencil through a base point, both signs of mu."""
    base = conic_base_point(f)
    rng = random.Random(seed) if seed is not None else None
    pencil = (conic_point_at(f, base, t) for t in rationals_by_height(rng))
    seen: set = set()
    for pt in itertools.chain([base], pencil):
        if pt is None:
            continue
        for mu in (pt[1], -pt[1]):
            fp = fiber(f, pt[0], mu)
            if fp in seen or bad_fiber(f, fp):
                continue
            seen.add(fp)
            yield fp
            if len(seen) >= count:
                return


# ---------------------------------------------------------------- cubic

Proj = tuple[int, int, int]


def normalize(pt: Iterable) -> Proj:
    """Primitive integer representative with positive leading nonzero entry."""
    vals = [Fraction(v) for v in pt]
    if all(v == 0 for v in vals):
        raise ValueError("(0:0:0) is not a projective point")
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def cubic_eval(f: ThreePointFrame, fp: FiberPoint, pt) -> Fraction:
    K, K2, H = (Fraction(v) for v in pt)
    return (f.p * H * H - K * K) * (fp.eta * H - fp.mu * K2) - (f.pprime * H * H - K2 * K2) * (f.p * H - fp.mu * K)


def cubic_gradient(f: ThreePointFrame, fp: FiberPoint, pt) -> tuple[Fraction, Fraction, Fraction]:
    K, K2, H = (Fraction(v) for v in pt)
    p, pp, eta, mu = f.p, f.pprime, fp.eta, fp.mu
    dK = -2 * K * (eta * H - mu * K2) + mu * (pp * H * H - K2 * K2)
    dK2 = -mu * (p * H * H - K * K) + 2 * K2 * (p * H - mu * K)
    dH = 2 * p * H * (eta * H - mu * K2) + eta * (p * H * H - K * K) - 2 * pp * H * (p * H - mu * K) - p * (pp * H * H - K2 * K2)
    return dK, dK2, dH


def sections(f: ThreePointFrame, fp: FiberPoint) -> dict[str, Proj]:
    return {
        "A": (1, 0, 0),
        "B": (0, 1, 0),
        "C": (1, 1, 0),
        "N": normalize((f.p, fp.eta, fp.mu)),
    }


def _comb(u, P, v, Q):
    return tuple(u * a + v * b for a, b in zip(P, Q))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _parallel(a, b) -> bool:
    return all(v == 0 for v in _cross(a, b))


def cubic_third_intersection(f: ThreePointFrame, fp: FiberPoint, P1, P2) -> Proj:
    """Third point of the cubic on the line P1P2 (the tangent line when P1 = P2)."""
    P1, P2 = normalize(P1), normalize(P2)
    F = lambda pt: cubic_eval(f, fp, pt)  # noqa: E731
    if P1 != P2:
        # F(u P1 + v P2) = u v (beta u + gamma v)
        plus, minus = F(_comb(1, P1, 1, P2)), F(_comb(1, P1, -1, P2))
        beta, gamma = (plus - minus) / 2, (plus + minus) / 2
        if beta == 0 and gamma == 0:
            raise LineOnCurve(f"line through {P1}, {P2} lies on the cubic")
        return normalize(_comb(gamma, P1, -beta, P2))
    grad = cubic_gradient(f, fp, P1)
    if all(g == 0 for g in grad):
        raise SingularPoint(f"{P1} is singular on the fiber {fp}")
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        Q = _cross(grad, e)
        if any(Q) and not _parallel(Q, P1):
            break
    # F(u P1 + v Q) = v^2 (lin u + cub v) since Q lies on the tangent at P1
    cub = F(Q)
    lin = F(_comb(1, P1, 1, Q)) - cub
    if lin == 0 and cub == 0:
        raise LineOnCurve(f"tangent at {P1} lies on the cubic")
    return normalize(_comb(cub, P1, -lin, Q))


def cubic_add(f: ThreePointFrame, fp: FiberPoint, P1, P2) -> Proj:
    N = sections(f, fp)["N"]
    return cubic_third_intersection(f, fp, N, cubic_third_intersection(f, fp, P1, P2))


def cubic_neg(f: ThreePointFrame, fp: FiberPoint, P1) -> Proj:
    N = sections(f, fp)["N"]
    return cubic_third_intersection(f, fp, P1, cubic_third_intersection(f, fp, N, N))


def cubic_mul(f: ThreePointFrame, fp: FiberPoint, n: int, P) -> Proj:
    out = sections(f, fp)["N"]
    for _ in range(n):
        out = cubic_add(f, fp, out, P)
    return out


def section_AplusB(f: ThreePointFrame, fp: FiberPoint) -> Proj:
    p, r, c, lam, mu, eta = f.p, f.r, f.c, fp.lam, fp.mu, fp.eta
    if eta == p:
        raise EtaEqualsP("closed form vanishes when eta = p; use cubic_add")
    common = p * r * (c * lam - 1) ** 2 - p * r * lam * lam
    return normalize((2 * p * (eta - p) + common, 2 * eta * (eta - p) + common, 2 * mu * (eta - p)))


# ---------------------------------------------------------------- solutions


@dataclass(frozen=True)
class Solution3:
    tcoord: Fraction | QuadExt
    ucoord: Fraction | QuadExt
    Q: PlanePoint | None
    d0: Fraction
    d: Fraction
    dprime: Fraction
    fiber: FiberPoint | None = None
    multiple: int | None = None

    def to_json(self) -> dict:
        out = {
            "frame": [str(self.tcoord), str(self.ucoord)],
            "Q": None if self.Q is None else [self.Q.x.to_json(), self.Q.y.to_json()],
            "d0": fmt_rational(self.d0),
            "d": fmt_rational(self.d),
            "dprime": fmt_rational(self.dprime),
        }
        if self.fiber is not None:
            out["fiber"] = self.fiber.to_json()
        if self.multiple is not None:
            out["n"] = self.multiple
        return out


def verify3(f: ThreePointFrame, x, y, d0, d, dprime) -> bool:
    """The three distance equations in frame coordinates, and in the plane when available."""
    phi = lambda a, b: f.p * a * a + f.r * b * b  # noqa: E731
    ok = (
        phi(x, y) == d0 * d0
        and phi(x - 1, y) == d * d
        and phi(x - f.c, y - 1) == dprime * dprime
        and min(d0, d, dprime) >= 0
    )
    if ok and f.lattice is not None and f.triangle is not None and f.triangle.points is not None:
        Q = f.lattice.point(x, y)
        o, i, j = _frame_vertices(f)
        ok = (Q - o).norm2() == d0 * d0 and (Q - i).norm2() == d * d and (Q - j).norm2() == dprime * dprime
    return ok


def _frame_vertices(f: ThreePointFrame):
    from .geometry import frame_indices

    o, i, j = frame_indices(f.origin_index)
    pts = f.triangle.points
    return pts[o], pts[i], pts[j]


def _emit(f: ThreePointFrame, x, y, z, k, kp, fp=None, n=None) -> Solution3:
    d0, d, dp = abs(z), abs(z - k), abs(z - kp)
    if not verify3(f, x, y, d0, d, dp):
        raise AssertionError(f"exact verification failed at frame point ({x}, {y})")
    return Solution3(x, y, f.point(x, y), d0, d, dp, fp, n)


def solution_from_point(f: ThreePointFrame, fp: FiberPoint, pt, n: int | None = None) -> Solution3:
    K, K2, H = (Fraction(v) for v in pt)
    if H == 0:
        raise PointAtInfinity(f"{tuple(pt)} has H = 0")
    k, kp = K / H, K2 / H
    if f.p == fp.mu * k:
        raise ExcludedDenominator("p = mu k")
    if fp.eta == fp.mu * kp:
        raise ExcludedDenominator("eta = mu k'")
    x = (f.p - k * k) / (2 * (f.p - k * fp.mu))
    return _emit(f, x, fp.lam * x, fp.mu * x, k, kp, fp, n)


MAZUR_BOUND = 12  # torsion points of an elliptic curve over Q have order at most 12


def _distinct_multiples(f: ThreePointFrame, fp: FiberPoint, multiples: int) -> list[Proj] | None:
    """A, 2A, ..., multiples*A, or None when A is torsion.

    No nA equals the origin N for n <= 12 exactly when A has infinite order.
    """
    sec = sections(f, fp)
    A, N = sec["A"], sec["N"]
    out, cur = [], A
    for _ in range(max(multiples, MAZUR_BOUND)):
        if cur == N:
            return None
        out.append(cur)
        cur = cubic_add(f, fp, cur, A)
    return out[:multiples]


def generate3(t: Triangle | ThreePointFrame, fibers: int = 5, multiples: int = 6, seed: int = 0, origin_index: int = 0) -> Iterator[Solution3]:
    """Solutions from the multiples nA, n = 1..multiples, on ``fibers`` good fibers.

    A fiber is used only if A has infinite order on it and at least one
    multiple yields a plane point; skipped fibers are logged.
    """
    f = t if isinstance(t, ThreePointFrame) else frame(t, origin_index)
    seen: set = set()
    used = 0
    used_lams: set = set()
    for fp in fiber_points(f, 10 * fibers + 20, seed):
        if used >= fibers:
            return
        # (lam, -mu) flips the signs of k, k' and z together: same plane points
        if fp.lam in used_lams:
            continue
        try:
            mults = _distinct_multiples(f, fp, multiples)
        except RatDistError as exc:
            log.info("fiber %s skipped: %s", fp, exc)
            continue
        if mults is None:
            log.info("fiber %s skipped: A is a torsion point", fp)
            continue
        fresh = []
        for n, pt in enumerate(mults, 1):
            try:
                sol = solution_from_point(f, fp, pt, n)
            except RatDistError:
                continue
            key = (sol.tcoord, sol.ucoord)
            if key not in seen:
                seen.add(key)
                fresh.append(sol)
        if not fresh:
            log.info("fiber %s skipped: no multiple of A gives a plane point", fp)
            continue
        used += 1
        used_lams.add(fp.lam)
        yield from fresh


def non_torsion_rate(f: ThreePointFrame, fibers: int = 20, multiples: int = 8, seed: int = 0) -> float:
    good = 0
    total = 0
    for fp in fiber_points(f, fibers, seed):
        total += 1
        try:
            good += _distinct_multiples(f, fp, multiples) is not None
        except RatDistError:
            pass
    return good / total if total else 0.0


# ---------------------------------------------------------------- alternative section


def alt_section(f: ThreePointFrame, fu, gu) -> Solution3:
    """Solution from a point (fu, gu) of ``p fu^2 + r gu^2 = 1``, with k = p fu."""
    fu, gu = Fraction(fu), Fraction(gu)
    if f.p * fu * fu + f.r * gu * gu != 1:
        raise ValueError("point is not on p f^2 + r g^2 = 1")
    p, r, c = f.p, f.r, f.c
    k = p * fu
    if k == 0:
        raise KZero("k = 0")
    phi1 = r * gu
    kp = phi1 + k * c
    delta, deltap = p - k * k, f.pprime - kp * kp
    phi0 = kp * delta - k * deltap
    B = 4 * p * r * delta - 4 * p * phi0 * phi1
    C = phi0 * phi0 - r * delta * delta
    if B == 0:
        raise BZero("linear coefficient vanishes at this parameter")
    x = -C / B
    # eliminating z between the two linear relations gives 2 r k y = 2 p phi1 x - phi0
    y = (2 * p * phi1 * x - phi0) / (2 * r * k)
    z = (2 * p * x - delta) / (2 * k)
    return _emit(f, x, y, z, k, kp)


def unit_conic_points(f: ThreePointFrame, count: int, seed: int | None = 0) -> Iterator[tuple[Fraction, Fraction]]:
    """Rational points of ``p f^2 + r g^2 = 1``, parametrized through one of them."""
    X, Y, Z = scaled_point(f.p, f.r)
    if Z == 0:
        return
    f0, g0 = X / Z, Y / Z
    seen = set()
    for t in rationals_by_height(random.Random(seed) if seed is not None else None):
        if len(seen) >= count:
            return
        # line (f0 + u, g0 + t u)
        quad = f.p + f.r * t * t
        u = -2 * (f.p * f0 + f.r * g0 * t) / quad
        pt = (f0 + u, g0 + t * u)
        if pt not in seen:
            seen.add(pt)
            yield pt


def generate_alt(f: ThreePointFrame, count: int, seed: int = 0) -> Iterator[Solution3]:
    emitted = 0
    for fu, gu in unit_conic_points(f, 4 * count + 10, seed):
        try:
            yield alt_section(f, fu, gu)
        except (BZero, KZero):
            continue
        emitted += 1
        if emitted >= count:
            return


# ---------------------------------------------------------------- collinear


def collinear_solution(p, q, k, kp, P: PlanePoint | None = None, realonly: bool = True) -> Solution3 | None:
    """Point Q = tP + uR for O, P, P' = qP on a line, R = P rotated by a right angle."""
    p, q, k, kp = (Fraction(v) for v in (p, q, k, kp))
    if q * k == kp:
        raise DegeneratePair("q k = k'")
    z = (p * kp * kp - p * q * k * k - q * q + q) / (2 * p * (q * k - kp))
    t = (1 - p * k * k - 2 * p * z * k) / 2
    v = p * z * z - t * t
    if v < 0 and realonly:
        return None
    d0, d, dp = p * abs(z), p * abs(z + k), p * abs(z + kp)
    # |tP + uR|^2 = p (t^2 + u^2) for |P|^2 = |R|^2 = p
    assert p * (t * t + v) == d0 * d0
    assert p * ((t - 1) ** 2 + v) == d * d
    assert p * ((t - q) ** 2 + v) == dp * dp
    u = QuadExt.sqrt(v) if v >= 0 else None
    Q = None
    if u is not None:
        P = P if P is not None else PlanePoint(QuadExt.sqrt(p), 0)
        R = PlanePoint(-P.y, P.x)
        try:
            Q = P * t + R * u
        except RatDistError:
            Q = None  # u and P live in different quadratic fields
        if Q is not None:
            Pp = P * q
            assert Q.norm2() == d0 * d0 and (Q - P).norm2() == d * d and (Q - Pp).norm2() == dp * dp
    return Solution3(t, u if u is not None else v, Q, d0, d, dp)


def generate3_collinear(p, q, pairs: Iterable[tuple], realonly: bool = True, P: PlanePoint | None = None) -> Iterator[Solution3]:
    p, q = Fraction(p), Fraction(q)
    if q in (0, 1):
        raise ValueError("q must differ from 0 and 1")
    for k, kp in pairs:
        try:
            sol = collinear_solution(p, q, k, kp, P, realonly)
        except DegeneratePair:
            continue
        if sol is not None:
            yield sol
