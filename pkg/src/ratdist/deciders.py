"""Density decisions for three-point configurations."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import SingularMatrix
from .exact import QuadExt, factorize, fmt_rational, squarefree_part
from .geometry import GramFrame, Triangle, collinear_data, gram_frame, iwasawa_data
from .quadforms import ConicPoint, conic_point, failing_places, is_isotropic


class Reason(str, enum.Enum):
    RationalGramAndRepresentsSquare = "RationalGramAndRepresentsSquare"
    GramIrrational = "GramIrrational"
    SquareNotRepresented = "SquareNotRepresented"
    CollinearRational = "CollinearRational"
    CollinearIrrational = "CollinearIrrational"


@dataclass(frozen=True)
class Verdict:
    dense: bool
    reason: Reason
    certificate: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"dense": self.dense, "reason": self.reason.value, "certificate": _jsonable(self.certificate)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, QuadExt):
        return str(obj)
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, ConicPoint):
        return list(obj.as_tuple())
    return obj


def _irrational_side(t: Triangle) -> QuadExt | None:
    for v in t.sides_sq:
        if not v.is_rational:
            return v
    return None


def _gram_certificate(g: GramFrame) -> dict:
    return {"p": g.p, "pprime": g.pprime, "s": g.s}


def _collinear_verdict(t: Triangle, origin_index: int) -> Verdict:
    p, q = collinear_data(t, origin_index)
    if p.is_rational and q.is_rational:
        return Verdict(True, Reason.CollinearRational, {"p": p, "q": q})
    bad = p if not p.is_rational else q
    return Verdict(False, Reason.CollinearIrrational, {"irrational": bad, "p": p, "q": q})


def decide_square_density(t: Triangle, origin_index: int = 0) -> Verdict:
    g = gram_frame(t, origin_index)
    if g.collinear:
        return _collinear_verdict(t, origin_index)
    bad = _irrational_side(t)
    if bad is not None:
        return Verdict(False, Reason.GramIrrational, {"irrational": bad})
    return Verdict(True, Reason.RationalGramAndRepresentsSquare, {"gram": _gram_certificate(g)})


def decide_rational_density(t: Triangle, origin_index: int = 0) -> Verdict:
    g = gram_frame(t, origin_index)
    if g.collinear:
        return _collinear_verdict(t, origin_index)
    bad = _irrational_side(t)
    if bad is not None:
        return Verdict(False, Reason.GramIrrational, {"irrational": bad})
    p, r = g.p.rational(), g.r.rational()
    # p, r > 0: every nontrivial zero of p x^2 + r y^2 - z^2 has z != 0
    if not is_isotropic(p, r):
        return Verdict(
            False,
            Reason.SquareNotRepresented,
            {"form": [p, r], "failing_places": failing_places(p, r)},
        )
    w = conic_point(p, r)
    _, cp = squarefree_part(p)
    _, cr = squarefree_part(r)
    return Verdict(
        True,
        Reason.RationalGramAndRepresentsSquare,
        {"form": [p, r], "witness": w, "frame_point": [Fraction(w.x) / cp, Fraction(w.y) / cr, Fraction(w.z)]},
    )


def check_condition_iv(t: Triangle, origin_index: int = 0) -> Verdict:
    """Decide density through the Iwasawa data (r, s, xi) of the side matrix."""
    g = gram_frame(t, origin_index)
    if g.collinear:
        return _collinear_verdict(t, origin_index)
    entries = (g.p, g.deltasq / g.p, g.s / g.p)
    for v in entries:
        if not v.is_rational:
            return Verdict(False, Reason.GramIrrational, {"irrational": v})
    iw = iwasawa_data(g)
    cert = {"r": iw.r, "s": iw.s, "xi": iw.xi}
    # r x^2 + s y^2 = 1 solvable iff r x^2 + s y^2 = z^2 has a zero with z != 0
    if not is_isotropic(iw.r, iw.s):
        return Verdict(False, Reason.SquareNotRepresented, {**cert, "failing_places": failing_places(iw.r, iw.s)})
    w = conic_point(iw.r, iw.s)
    _, cr = squarefree_part(iw.r)
    _, cs = squarefree_part(iw.s)
    one = (Fraction(w.x) / cr / w.z, Fraction(w.y) / cs / w.z)
    assert iw.r * one[0] ** 2 + iw.s * one[1] ** 2 == 1
    return Verdict(True, Reason.RationalGramAndRepresentsSquare, {**cert, "represents_one": list(one)})


def is_sum_of_two_squares(q: Fraction) -> bool:
    """Positive rational that is x^2 + y^2 over Q: no prime = 3 mod 4 in its squarefree part."""
    q = Fraction(q)
    if q <= 0:
        return False
    s, _ = squarefree_part(q)
    return all(p % 4 != 3 for p, _ in factorize(s).factors)


def is_admissible_transform(T, translation=None) -> bool:
    """Whether T = lam * A with A in GL2(Q) and lam^2 a sum of two rational squares."""
    m = [[QuadExt.coerce(v) for v in row] for row in T]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise SingularMatrix("T is not invertible")
    entries = [v for row in m for v in row if v != 0]
    ref = entries[0]
    if any(not (v / ref).is_rational for v in entries):
        return False
    lam2 = ref * ref
    if not lam2.is_rational:
        return False
    return is_sum_of_two_squares(lam2.rational())
