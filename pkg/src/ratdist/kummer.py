"""Quartic relation between the three distances z = |Q|, u = |Q - P|, v = |Q - P'|.

Coordinates are normalized to O = (0, 0), P = (1, 0), P' = (a, b).  Solving the
two linear relations for x and y and substituting into x^2 + y^2 = z^2 gives,
after clearing the factor 4 b^2,

    b^2 (z^2 - u^2 + 1)^2 + (a^2 + b^2 - a + (1 - a) z^2 + a u^2 - v^2)^2 - 4 b^2 z^2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BZeroDegenerate
from .exact import fmt_rational

Monomial = tuple[int, int, int]  # exponents of (z, u, v)
Poly = dict[Monomial, Fraction]


def _add(p: Poly, q: Poly, scale: Fraction = Fraction(1)) -> Poly:
    """p + scale * q"""
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, Fraction(0)) + scale * c
    return {m: c for m, c in out.items() if c}


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a1, b1, c1), x in p.items():
        for (a2, b2, c2), y in q.items():
            m = (a1 + a2, b1 + b2, c1 + c2)
            out[m] = out.get(m, Fraction(0)) + x * y
    return {m: c for m, c in out.items() if c}


def _poly(**terms) -> Poly:
    names = {"one": (0, 0, 0), "z2": (2, 0, 0), "u2": (0, 2, 0), "v2": (0, 0, 2)}
    return {names[k]: Fraction(v) for k, v in terms.items() if v}


@dataclass(frozen=True)
class KummerQuartic:
    a: Fraction
    b: Fraction
    coefficients: tuple[tuple[Monomial, Fraction], ...]

    def as_dict(self) -> Poly:
        return dict(self.coefficients)

    def __call__(self, z, u, v) -> Fraction:
        return quartic_eval(self, z, u, v)

    def to_json(self) -> dict:
        return {
            "a": fmt_rational(self.a),
            "b": fmt_rational(self.b),
            "coefficients": [{"z": m[0], "u": m[1], "v": m[2], "c": fmt_rational(c)} for m, c in self.coefficients],
        }

    def __str__(self) -> str:
        parts = []
        for (i, j, k), c in self.coefficients:
            mono = "*".join(f"{name}^{e}" if e > 1 else name for name, e in (("z", i), ("u", j), ("v", k)) if e)
            parts.append(fmt_rational(c) + (f"*{mono}" if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")


def derive_quartic(a, b) -> KummerQuartic:
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise BZeroDegenerate("P' on the line OP: the y-elimination divides by b")
    xnum = _poly(z2=1, u2=-1, one=1)  # 2x
    ynum = _poly(one=a * a + b * b - a, z2=1 - a, u2=a, v2=-1)  # 2b y
    poly = _add({}, _mul(xnum, xnum), b * b)
    poly = _add(poly, _mul(ynum, ynum))
    poly = _add(poly, _poly(z2=1), -4 * b * b)
    ordered = tuple(sorted(poly.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0]))))
    return KummerQuartic(a, b, ordered)


def quartic_eval(kq: KummerQuartic, z, u, v) -> Fraction:
    z, u, v = Fraction(z), Fraction(u), Fraction(v)
    return sum((c * z**i * u**j * v**k for (i, j, k), c in kq.coefficients), Fraction(0))


def is_even(kq: KummerQuartic) -> bool:
    return all(e % 2 == 0 for m, _ in kq.coefficients for e in m)
