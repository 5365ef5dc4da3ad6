"""Exact scalars: rationals, elements of one real quadratic field, factorization.

Rationals are plain :class:`fractions.Fraction` values (always reduced).
:class:`QuadExt` represents ``a + b*sqrt(d)`` with rational ``a, b`` and a
squarefree ``d > 1``; a value with ``b == 0`` is field-agnostic and may be
combined with any ``d``.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import FactorizationLimitExceeded, MixedFieldError

Rational = Fraction
Scalar = Union[int, Fraction, "QuadExt"]

TRIAL_LIMIT = 10**6


@dataclass(frozen=True)
class FactorBudget:
    trial_limit: int = TRIAL_LIMIT
    rho_iterations: int = 200_000
    seed: int = 0


def default_budget() -> FactorBudget:
    """Budget from ``RATDIST_FACTOR_BUDGET`` (rho iteration cap), else defaults."""
    raw = os.environ.get("RATDIST_FACTOR_BUDGET")
    if raw:
        return FactorBudget(rho_iterations=int(raw))
    return FactorBudget()


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic below 3.3e24 with these bases
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, rng: random.Random, budget: int) -> int:
    """Brent's variant of Pollard rho; returns a nontrivial factor of odd composite n."""
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > budget:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationLimitExceeded(f"rho budget exhausted on {n}")


def factorize(n: int, budget: FactorBudget | None = None) -> Factorization:
    if n == 0:
        raise ValueError("cannot factor 0")
    budget = budget or default_budget()
    sign = -1 if n < 0 else 1
    n = abs(n)
    counts: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= budget.trial_limit:
        while n % d == 0:
            counts[d] = counts.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        rng = random.Random(budget.seed)
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if d * d > m or is_probable_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
            r = isqrt(m)
            if r * r == m:
                stack += [r, r]
                continue
            f = _rho(m, rng, budget.rho_iterations)
            stack += [f, m // f]
    return Factorization(sign, tuple(sorted(counts.items())))


def squarefree_part(q: Fraction | int, budget: FactorBudget | None = None) -> tuple[int, Fraction]:
    """Write ``q = s * c**2`` with ``s`` a squarefree integer and ``c > 0``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree part of 0")
    f = factorize(q.numerator * q.denominator, budget)
    s = f.sign
    for p, e in f.factors:
        if e % 2:
            s *= p
    c = rational_sqrt(q / s)
    assert c is not None
    return s, c


def squarefree_int(n: int) -> int:
    return squarefree_part(n)[0]


def rational_sqrt(q: Fraction | int) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def fmt_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class QuadExt:
    """``a + b*sqrt(d)``; immutable, hashable, exactly comparable."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction | int = 0, b: Fraction | int = 0, d: int = 1):
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            d = 1
        elif d <= 1:
            raise ValueError(f"irrational part needs squarefree d > 1, got {d}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def sqrt(cls, n: Fraction | int) -> QuadExt:
        """Exact square root of a nonnegative rational, reduced into ``c*sqrt(s)``."""
        n = Fraction(n)
        if n < 0:
            raise ValueError("negative radicand")
        if n == 0:
            return cls(0)
        s, c = squarefree_part(n)
        return cls(c) if s == 1 else cls(0, c, s)

    @staticmethod
    def coerce(x: Scalar) -> QuadExt:
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExt(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadExt")

    def _field(self, other: QuadExt) -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise MixedFieldError(f"sqrt({self.d}) and sqrt({other.d}) in one expression")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conj(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def sign(self) -> int:
        """Sign of the real number under the embedding sqrt(d) > 0."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d*b^2
        return sa if self.a * self.a > self.d * self.b * self.b else sb

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d**0.5

    def __add__(self, other: Scalar) -> QuadExt:
        o = QuadExt.coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other: Scalar) -> QuadExt:
        return self + (-QuadExt.coerce(other))

    def __rsub__(self, other: Scalar) -> QuadExt:
        return QuadExt.coerce(other) - self

    def __mul__(self, other: Scalar) -> QuadExt:
        o = QuadExt.coerce(other)
        d = self._field(o)
        return QuadExt(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Scalar) -> QuadExt:
        return self * QuadExt.coerce(other).inverse()

    def __rtruediv__(self, other: Scalar) -> QuadExt:
        return QuadExt.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QuadExt:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QuadExt(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.d))

    def __lt__(self, other: Scalar) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Scalar) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Scalar) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Scalar) -> bool:
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"QuadExt({fmt_rational(self.a)!r}, {fmt_rational(self.b)!r}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return fmt_rational(self.a)
        rad = f"sqrt{self.d}"
        b = "" if self.b == 1 else "-" if self.b == -1 else f"{fmt_rational(self.b)}*"
        if self.a == 0:
            return f"{b}{rad}"
        sep = "+" if self.b > 0 else ""
        return f"{fmt_rational(self.a)}{sep}{b}{rad}"

    def to_json(self) -> dict:
        return {"a": fmt_rational(self.a), "b": fmt_rational(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict | str) -> QuadExt:
        if isinstance(obj, str):
            return cls(parse_rational(obj))
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj["d"]))


def quad_sqrt(x: QuadExt) -> QuadExt | None:
    """Exact square root inside the same field, or None."""
    if x.b == 0:
        if x.a < 0:
            return None
        r = rational_sqrt(x.a)
        if r is not None:
            return QuadExt(r)
        s, c = squarefree_part(x.a)
        return QuadExt(0, c, s) if s > 1 else None
    # (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d
    n = rational_sqrt(x.norm())
    if n is None:
        return None
    for u2 in ((x.a + n) / 2, (x.a - n) / 2):
        u = rational_sqrt(u2)
        if u and u != 0:
            v = x.b / (2 * u)
            root = QuadExt(u, v, x.d)
            if root * root == x:
                return abs(root)
    return None
