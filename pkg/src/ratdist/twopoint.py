"""Points at rational distance from two rational points O and P = O + (a, b)."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .errors import DegenerateParameter, LineThroughOrigin
from .exact import rational_sqrt
from .geometry import PlanePoint
from .quadforms import Conic, conic_parametrize


@dataclass(frozen=True)
class TwoPointConfig:
    O: tuple[Fraction, Fraction]
    P: tuple[Fraction, Fraction]

    def __init__(self, O, P):
        O = (Fraction(O[0]), Fraction(O[1]))
        P = (Fraction(P[0]), Fraction(P[1]))
        if O == P:
            raise ValueError("O and P coincide")
        object.__setattr__(self, "O", O)
        object.__setattr__(self, "P", P)

    @property
    def ab(self) -> tuple[Fraction, Fraction]:
        return self.P[0] - self.O[0], self.P[1] - self.O[1]


@dataclass(frozen=True)
class Solution2:
    Q: tuple[Fraction, Fraction]
    d0: Fraction
    d1: Fraction
    fiber: Fraction  # confocal parameter: the signed distances satisfy z - w = fiber
    degenerate: bool = False

    @property
    def k(self) -> Fraction:
        return self.d0 - self.d1

    @property
    def point(self) -> PlanePoint:
        return PlanePoint(*self.Q)

    def to_json(self) -> dict:
        from .exact import fmt_rational as f

        return {
            "Q": [f(self.Q[0]), f(self.Q[1])],
            "d0": f(self.d0),
            "d1": f(self.d1),
            "k": f(self.k),
            "fiber": f(self.fiber),
            "degenerate": self.degenerate,
        }


def verify2(cfg: TwoPointConfig, Q, d0, d1) -> bool:
    (ox, oy), (px, py) = cfg.O, cfg.P
    x, y = Fraction(Q[0]), Fraction(Q[1])
    r0 = rational_sqrt((x - ox) ** 2 + (y - oy) ** 2)
    r1 = rational_sqrt((x - px) ** 2 + (y - py) ** 2)
    return r0 is not None and r1 is not None and r0 == d0 and r1 == d1


def pythagorean_point(lam, p) -> tuple[Fraction, Fraction, Fraction]:
    lam, p = Fraction(lam), Fraction(p)
    return 2 * lam * p, lam * (p * p - 1), lam * (p * p + 1)


def _solution(cfg: TwoPointConfig, x, y, z, k) -> Solution2:
    """Package a relative point (x, y) with signed distances z and z - k."""
    d0, d1 = abs(z), abs(z - k)
    Q = (cfg.O[0] + x, cfg.O[1] + y)
    if not verify2(cfg, Q, d0, d1):
        raise AssertionError(f"exact verification failed at {Q}")
    return Solution2(Q, d0, d1, Fraction(k), degenerate=(d0 == 0 or d1 == 0))


def section_point(cfg: TwoPointConfig, k) -> Solution2:
    """Point on the vertical line through P lying on the confocal conic C_k."""
    k = Fraction(k)
    a, b = cfg.ab
    swap = a == 0
    if swap:
        a, b = b, a
    if k == 0 or k == b:
        raise DegenerateParameter(f"k = {k} excluded")
    # x = a forces k = 2*lam + b with lam = a/(2p), so p = a/(k - b)
    p = a / (k - b)
    x, y, z = pythagorean_point(a / (2 * p), p)
    assert x == a
    if swap:
        x, y = y, x
    return _solution(cfg, x, y, z, k)


def confocal_conic(cfg: TwoPointConfig, k) -> Conic:
    """``(2ax + 2by - delta)^2 = 4k^2 (x^2 + y^2)`` in coordinates centred at O."""
    k = Fraction(k)
    a, b = cfg.ab
    delta = a * a + b * b - k * k
    return Conic.of(
        4 * a * a - 4 * k * k,
        8 * a * b,
        4 * b * b - 4 * k * k,
        -4 * a * delta,
        -4 * b * delta,
        delta * delta,
    )


def rationals_by_height(rng: random.Random | None = None, positive: bool = False) -> Iterator[Fraction]:
    """Every rational exactly once, by increasing max(|num|, den); blocks shuffled by rng."""
    if not positive:
        yield Fraction(0)
    h = 1
    while True:
        block = []
        for den in range(1, h + 1):
            for num in (h,) if den < h else range(1, h + 1):
                q = Fraction(num, den)
                if q.numerator == num and q.denominator == den:
                    block.append(q)
        if not positive:
            block += [-q for q in block]
        if rng is not None:
            rng.shuffle(block)
        yield from block
        h += 1


def fiber_solutions(cfg: TwoPointConfig, k, slopes) -> Iterator[Solution2]:
    """Points of C_k obtained from the pencil through its section point."""
    k = Fraction(k)
    a, b = cfg.ab
    delta = a * a + b * b - k * k
    base = section_point(cfg, k)
    conic = confocal_conic(cfg, k)
    if conic.degenerate:
        return
    x0, y0 = base.Q[0] - cfg.O[0], base.Q[1] - cfg.O[1]
    param = conic_parametrize(conic, (x0, y0))
    for t in slopes:
        pt = param(t)
        if pt is None:
            continue
        x, y = pt
        z = (2 * a * x + 2 * b * y - delta) / (2 * k)
        yield _solution(cfg, x, y, z, k)


def _slope_towards(base: Solution2, x: float, y: float) -> Fraction | None:
    # the line from the base point towards a point near C_k meets C_k again
    # near that point
    x0, y0 = float(base.Q[0]), float(base.Q[1])
    if abs(x - x0) < 1e-9:
        return None
    return Fraction((y - y0) / (x - x0)).limit_denominator(1000)


def _radical_inverse(i: int, base: int) -> float:
    out, scale = 0.0, 1.0 / base
    while i:
        i, digit = divmod(i, base)
        out += digit * scale
        scale /= base
    return out


def generate2(
    cfg: TwoPointConfig,
    count: int,
    seed: int = 0,
    sweep_height: int = 3,
    spread: float = 2.5,
    max_den: int = 64,
) -> Iterator[Solution2]:
    """Exactly verified solutions, spread over a square window around the midpoint of OP.

    First the section points of every fiber k of height at most
    ``sweep_height``, in a fixed order.  Then, repeatedly: a low-discrepancy target
    in the window (half-width ``spread * |OP|``), the Stern-Brocot best
    approximation k (denominator at most ``max_den``) of its confocal
    parameter, and the second point of C_k on the line from the section point
    towards the target.
    """
    if count <= 0:
        return
    rng = random.Random(seed)
    seen: set = set()

    def fresh(sols):
        for sol in sols:
            if sol.Q not in seen:
                seen.add(sol.Q)
                yield sol

    def sweep():
        # height order, larger |k| first inside a height; focus points last
        deferred = []
        for h in range(1, sweep_height + 1):
            block = sorted(
                (Fraction(n, d) * sgn for d in range(1, h + 1) for n in range(1, h + 1)
                 if max(n, d) == h and gcd(n, d) == 1 for sgn in (1, -1)),
                key=lambda k: (-abs(k), -k),
            )
            for k in block:
                try:
                    sol = section_point(cfg, k)
                except DegenerateParameter:
                    continue
                if sol.degenerate:
                    deferred.append(sol)
                else:
                    yield sol
        yield from deferred

    def aimed():
        a, b = (float(v) for v in cfg.ab)
        half = spread * math.hypot(a, b)
        mx, my = float(cfg.O[0]) + a / 2, float(cfg.O[1]) + b / 2
        # Halton targets with a seeded rotation: low discrepancy, so every
        # part of the window receives its share of targets
        shift = (rng.random(), rng.random())
        for i in itertools.count(1):
            hx = (_radical_inverse(i, 2) + shift[0]) % 1
            hy = (_radical_inverse(i, 3) + shift[1]) % 1
            tx, ty = mx + half * (2 * hx - 1), my + half * (2 * hy - 1)
            d0 = math.hypot(tx - float(cfg.O[0]), ty - float(cfg.O[1]))
            d1 = math.hypot(tx - float(cfg.P[0]), ty - float(cfg.P[1]))
            k = Fraction(d0 + d1 if rng.random() < 0.5 else d0 - d1).limit_denominator(max_den)
            try:
                base = section_point(cfg, k)
            except DegenerateParameter:
                continue
            slope = _slope_towards(base, tx, ty)
            if slope is None or confocal_conic(cfg, k).degenerate:
                continue
            yield from fiber_solutions(cfg, k, [slope])

    for emitted, sol in enumerate(fresh(itertools.chain(sweep(), aimed())), 1):
        yield sol
        if emitted >= count:
            return


def line_points(O, a, b, count: int) -> Iterator[tuple[tuple[Fraction, Fraction], Fraction]]:
    """Rational points of ``y = a x + b`` at rational distance from O."""
    ox, oy = Fraction(O[0]), Fraction(O[1])
    a, b = Fraction(a), Fraction(b)
    bb = b + a * ox - oy  # intercept once O is moved to the origin
    if bb == 0:
        raise LineThroughOrigin("the line passes through O")
    seen = set()
    for t in rationals_by_height():
        if len(seen) >= count:
            return
        den = t * t - a * a - 1
        if den == 0:
            continue
        x = 2 * bb * (a - t) / den
        Q = (ox + x, oy + a * x + bb)
        if Q in seen:
            continue
        d0 = abs(bb + t * x)
        assert rational_sqrt(x * x + (a * x + bb) ** 2) == d0
        seen.add(Q)
        yield Q, d0
