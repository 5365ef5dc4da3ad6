"""Acceptance criteria 1-10, one check each.

Run ``python tests/test_acceptance.py`` for one PASS/FAIL line per criterion;
under pytest the same lines appear in the terminal summary.
"""

from __future__ import annotations

import itertools
import math
import random
import sys
import time
from fractions import Fraction
from math import isqrt

import pytest

from ratdist.deciders import check_condition_iv, decide_rational_density
from ratdist.errors import RatDistError
from ratdist.exact import QuadExt, squarefree_int
from ratdist.geometry import PlanePoint, Triangle
from ratdist.kummer import derive_quartic
from ratdist.quadforms import INF, hilbert_symbol, is_isotropic
from ratdist.rings import (
    GaussianInt,
    fundamental_unit,
    gaussian_decompose,
    gaussian_orbit,
    realquad_line_points,
    verify_ring_point,
)
from ratdist.search import search_points
from ratdist.threepoint import (
    cubic_add,
    cubic_third_intersection,
    fiber_points,
    frame,
    generate3,
    generate3_collinear,
    collinear_solution,
    section_AplusB,
    sections,
    verify3,
)
from ratdist.twopoint import TwoPointConfig, generate2, verify2

RESULTS: dict[str, tuple[bool, str]] = {}


def record(name: str, ok: bool, detail: str) -> bool:
    RESULTS[name] = (ok, detail)
    return ok


# ---------------------------------------------------------------- oracles


def primitive_solution_mod(a: int, b: int, p: int, e: int) -> bool:
    """Whether a x^2 + b y^2 = z^2 has a solution mod p^e with not all of x, y, z divisible by p."""
    m = p**e
    squares = {}
    for t in range(m):
        squares.setdefault(t * t % m, []).append(t)
    for x, y in itertools.product(range(m), repeat=2):
        for z in squares.get((a * x * x + b * y * y) % m, []):
            if x % p or y % p or z % p:
                return True
    return False


def holzer_isotropic(a: int, b: int) -> bool:
    """Brute force inside Holzer's box for a x^2 + b y^2 - z^2, a and b squarefree integers."""
    g = math.gcd(a, b)
    a1, b1 = a // g, b // g
    # g | z, so with z = g w: a1 x^2 + b1 y^2 = g w^2, pairwise coprime squarefree coefficients
    bx, by = isqrt(abs(b1 * g)), isqrt(abs(a1 * g))
    for x in range(0, bx + 1):
        for y in range(0, by + 1):
            if x == 0 and y == 0:
                continue
            num = a1 * x * x + b1 * y * y
            if num % g:
                continue
            w2 = num // g
            if w2 >= 0 and isqrt(w2) ** 2 == w2:
                return True
    return False


def cf_fundamental_unit(delta: int) -> tuple[int, int]:
    """Smallest y >= 1 with delta*y^2 +- 1 a square: brute force independent of continued fractions."""
    for y in itertools.count(1):
        for s in (-1, 1):
            x2 = delta * y * y + s
            x = isqrt(x2)
            if x * x == x2:
                return x, y


# ---------------------------------------------------------------- criteria


def criterion_1() -> bool:
    out = []
    t0 = time.perf_counter()
    v = decide_rational_density(Triangle.from_points((0, 0), (3, 0), (0, 4)))
    out.append(v.dense)
    s3 = QuadExt.sqrt(3)
    v = decide_rational_density(Triangle.from_points((0, 0), (1, 0), (0, s3)))
    x, y, z = v.certificate["frame_point"]
    out.append(v.dense and x * x + 3 * y * y == z * z and z != 0)
    pent = Triangle.from_sides_sq(1, 1, (3 + QuadExt.sqrt(5)) / 2)
    v = decide_rational_density(pent)
    out.append(not v.dense and v.reason.value == "GramIrrational" and not v.certificate["irrational"].is_rational)
    v = decide_rational_density(Triangle.from_sides_sq(3, 5, 8))
    places = set(v.certificate.get("failing_places", []))
    oracle = not primitive_solution_mod(3, 5, 3, 3)  # no primitive solution mod 27
    out.append(not v.dense and places == {3, 5} and oracle)
    elapsed = time.perf_counter() - t0
    ok = all(out) and elapsed < 4
    return record("1", ok, f"deciders on named instances {out}, {elapsed:.2f}s")


def criterion_2() -> bool:
    t0 = time.perf_counter()
    rng = random.Random(2)
    product_ok = True
    sieve = [p for p in range(2, 10**4 + 1) if all(p % q for q in range(2, isqrt(p) + 1))]
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        # (a, b)_p = 1 at odd primes dividing neither a nor b
        primes = {p for p in sieve if a % p == 0 or b % p == 0} | {2}
        prod = hilbert_symbol(a, b, INF)
        for p in primes:
            prod *= hilbert_symbol(a, b, p)
        product_ok &= prod == 1
    sqf = [n for n in range(-50, 51) if n and squarefree_int(n) == n]
    mismatches = [(a, b) for a in sqf for b in sqf if is_isotropic(a, b) != holzer_isotropic(a, b)]
    elapsed = time.perf_counter() - t0
    ok = product_ok and not mismatches and elapsed < 30
    return record("2", ok, f"product formula {product_ok}, Holzer mismatches {mismatches[:3]} of {len(sqf)**2} pairs, {elapsed:.1f}s")


def random_triangle(rng: random.Random) -> Triangle:
    while True:
        try:
            if rng.random() < 0.5:
                pts = [(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4))) for _ in range(3)]
                return Triangle.from_points(*pts)
            sides = [Fraction(rng.randint(1, 60), rng.randint(1, 5)) for _ in range(3)]
            return Triangle.from_sides_sq(*sides)
        except (ValueError, ArithmeticError, RatDistError):
            continue


def criterion_3() -> bool:
    t0 = time.perf_counter()
    rng = random.Random(3)
    bad = []
    for _ in range(500):
        t = random_triangle(rng)
        if decide_rational_density(t).dense != check_condition_iv(t).dense:
            bad.append(t)
    elapsed = time.perf_counter() - t0
    return record("3", not bad and elapsed < 60, f"{500 - len(bad)}/500 agree, {elapsed:.1f}s")


def criterion_4() -> bool:
    t0 = time.perf_counter()
    cfg = TwoPointConfig((0, 0), (1, 0))
    sols = list(generate2(cfg, 1000, seed=0))
    distinct = len({s.Q for s in sols}) == len(sols) == 1000
    verified = all(verify2(cfg, s.Q, s.d0, s.d1) for s in sols)
    closed = any(s.Q == (1, Fraction(-3, 4)) and (s.d0, s.d1) == (Fraction(5, 4), Fraction(3, 4)) for s in sols)
    cells = {(math.floor((s.Q[0] + 2) * Fraction(10, 4)), math.floor((s.Q[1] + 2) * Fraction(10, 4))) for s in sols if -2 <= s.Q[0] < 2 and -2 <= s.Q[1] < 2}
    elapsed = time.perf_counter() - t0
    ok = distinct and verified and closed and len(cells) == 100 and elapsed < 30
    return record("4", ok, f"1000 distinct {distinct}, verified {verified}, (1,-3/4) {closed}, grid cells {len(cells)}/100, {elapsed:.1f}s")


def criterion_5() -> bool:
    t0 = time.perf_counter()
    f = frame(Triangle.from_points((0, 0), (3, 0), (0, 4)))
    sols = list(generate3(f, fibers=5, multiples=6, seed=0))
    exact = all(verify3(f, s.tcoord, s.ucoord, s.d0, s.d, s.dprime) for s in sols)
    checks = {"assoc": True, "2C=0": True, "A+C=B": True, "tangentA": True, "A+B": True}
    used = 0
    for fp in fiber_points(f, 60, seed=1):
        if used >= 20:
            break
        try:
            sec = sections(f, fp)
            A, B, C, N = sec["A"], sec["B"], sec["C"], sec["N"]
            add = lambda P, Q: cubic_add(f, fp, P, Q)  # noqa: E731
            checks["assoc"] &= add(add(A, B), C) == add(A, add(B, C)) and add(add(A, A), B) == add(A, add(A, B))
            checks["2C=0"] &= add(C, C) == N
            checks["A+C=B"] &= add(A, C) == B
            checks["tangentA"] &= cubic_third_intersection(f, fp, A, A) == N
            checks["A+B"] &= section_AplusB(f, fp) == add(A, B)
        except RatDistError:  # special fibers (eta = p, singular points) are skipped, not counted
            continue
        used += 1
    elapsed = time.perf_counter() - t0
    ok = len(sols) >= 20 and exact and all(checks.values()) and used == 20 and elapsed < 120
    return record("5", ok, f"{len(sols)} solutions exact={exact}, group law on {used} fibers {checks}, {elapsed:.1f}s")


def criterion_6() -> bool:
    t0 = time.perf_counter()
    s = collinear_solution(1, 2, 3, 1)
    ref = (
        s.tcoord == Fraction(17, 10)
        and s.ucoord * s.ucoord == Fraction(18, 25)
        and (s.d0, s.d, s.dprime) == (Fraction(19, 10), Fraction(11, 10), Fraction(9, 10))
    )
    z = Fraction(-19, 10)  # d0 = p|z| with p = 1
    Q = s.Q
    ref &= Q is not None and Q.norm2() == s.d0**2 and (Q - PlanePoint(1, 0)).norm2() == s.d**2 and (Q - PlanePoint(2, 0)).norm2() == s.dprime**2
    ref &= abs(z) == s.d0
    pairs = ((Fraction(k), Fraction(kp)) for k in range(-12, 13) for kp in range(-12, 13) if k and kp and (k, kp) != (3, 1))
    more = []
    for sol in generate3_collinear(1, 2, pairs, realonly=True):
        if sol.Q is None:
            continue
        P, Pp = PlanePoint(1, 0), PlanePoint(2, 0)
        assert sol.Q.norm2() == sol.d0**2 and (sol.Q - P).norm2() == sol.d**2 and (sol.Q - Pp).norm2() == sol.dprime**2
        more.append(sol)
        if len(more) == 100:
            break
    elapsed = time.perf_counter() - t0
    ok = ref and len(more) == 100 and elapsed < 10
    return record("6", ok, f"(3,1) reference {ref}, further verified {len(more)}, {elapsed:.1f}s")


def criterion_7() -> bool:
    t0 = time.perf_counter()
    kq = derive_quartic(0, 1)
    expected = {(4, 0, 0): 2, (0, 4, 0): 1, (0, 0, 4): 1, (0, 0, 0): 2, (2, 2, 0): -2, (2, 0, 2): -2, (0, 2, 0): -2, (0, 0, 2): -2}
    coeff_ok = kq.as_dict() == {m: Fraction(c) for m, c in expected.items()}
    f = frame(Triangle.from_points((0, 0), (1, 0), (0, 1)))
    sols = list(itertools.islice(generate3(f, fibers=12, multiples=6, seed=0), 50))
    residual_ok = len(sols) == 50 and all(kq(s.d0, s.d, s.dprime) == 0 for s in sols)
    hand = kq(Fraction(3, 4), Fraction(1, 4), Fraction(5, 4)) == 0
    elapsed = time.perf_counter() - t0
    ok = coeff_ok and residual_ok and hand and elapsed < 30
    return record("7", ok, f"coefficients {coeff_ok}, 50 residuals zero {residual_ok}, hand point {hand}, {elapsed:.1f}s")


def criterion_8() -> bool:
    t0 = time.perf_counter()
    units_ok = all((u.a, u.b) == cf_fundamental_unit(d) == ref for d, ref in ((2, (1, 1)), (3, (2, 1)), (5, (2, 1))) for u in [fundamental_unit(d)])
    lines_ok = True
    for d in (2, 3, 5):
        pts = list(realquad_line_points((0, 0), (3, 4), d, 50))
        lines_ok &= len(pts) == 50 and all(verify_ring_point((0, 0), (3, 4), p.Q, p.dO, p.dP, d) for p in pts)
        lines_ok &= all(p.omega.norm() in (1, -1) and (p.omega.a - 1) % 2 == 0 and p.omega.b % 2 == 0 for p in pts)
    r2 = QuadExt.sqrt(2)
    pts = list(realquad_line_points((0, 0), (3, 4), 2, 3))
    corrected = any(p.Q == (QuadExt(3), 6 * r2) and p.dO == 9 for p in pts) and 9 + (6 * r2) ** 2 == 81
    literal = literal_worked_point_holds()
    elapsed = time.perf_counter() - t0
    ok = units_ok and lines_ok and corrected and literal and elapsed < 30
    detail = f"units {units_ok}, 150 line points {lines_ok}, corrected point t=6*sqrt2 s=9 {corrected}, literal t=4+6*sqrt2 s=9 {literal}"
    if not literal:
        detail += " (the literal point has 3^2 + t^2 = 97+48*sqrt2, not 81; see ledger)"
    return record("8", ok, detail + f", {elapsed:.1f}s")


def literal_worked_point_holds() -> bool:
    t = 4 + 6 * QuadExt.sqrt(2)
    return QuadExt(3) ** 2 + t * t == QuadExt(9) ** 2


def criterion_9() -> bool:
    t0 = time.perf_counter()
    G = GaussianInt
    sys_a = gaussian_decompose(G(3, 4))
    sols_a = list(gaussian_orbit(sys_a, 12, bound=200))
    base = sols_a[0]
    base_ok = (base.w1, base.w2, base.z, base.point) == (G(9, 12), G(9, -12), G(15, 0), (G(9, 0), G(12, 0)))
    sys_b = gaussian_decompose(G(1, 1))
    base_system_ok = (sys_b.d1, sys_b.d2, sys_b.rs, sys_b.uv) == (G(1, 1), G(1, -1), (G(1, 0), G(0, 0)), (G(0, 0), G(0, 1)))
    sols_b = list(gaussian_orbit(sys_b, 12, bound=200))
    orbit_ok = True
    for sys_, sols in ((sys_a, sols_a), (sys_b, sols_b)):
        orbit_ok &= len(sols) >= 10 and all(sys_.check(s.rs, s.uv) for s in sols)
    elapsed = time.perf_counter() - t0
    ok = base_ok and base_system_ok and orbit_ok and elapsed < 60
    return record("9", ok, f"3+4i base {base_ok}, 1+i base system {base_system_ok}, orbits {len(sols_a)}/{len(sols_b)} re-verified {orbit_ok}, {elapsed:.1f}s")


def criterion_10() -> bool:
    t0 = time.perf_counter()
    found = search_points([PlanePoint(0, 0), PlanePoint(1, 0), PlanePoint(1, 1), PlanePoint(0, 1)], 50)
    elapsed = time.perf_counter() - t0
    return record("10", found == [] and elapsed < 300, f"unit square H=50: {len(found)} points, {elapsed:.1f}s")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("crit", CRITERIA[:7] + CRITERIA[8:], ids=lambda c: c.__name__)
def test_criterion(crit):
    assert crit(), RESULTS[crit.__name__.split("_")[1]][1]


def test_criterion_8_consistent_parts():
    """Units, 150 line points and the corrected worked point; the literal point is tested separately."""
    criterion_8()
    detail = RESULTS["8"][1]
    assert "units True" in detail and "line points True" in detail and "corrected point t=6*sqrt2 s=9 True" in detail


@pytest.mark.xfail(strict=True, reason="t = 4+6*sqrt2 with s = 9 gives 97+48*sqrt2 != 81; the consistent point is t = 6*sqrt2")
def test_criterion_8_literal_worked_point():
    assert literal_worked_point_holds()


def main() -> int:
    failed = 0
    for crit in CRITERIA:
        crit()
    for name, (ok, detail) in RESULTS.items():
        print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
