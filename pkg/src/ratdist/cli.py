"""Command-line front end writing JSON-lines records."""

from __future__ import annotations

import argparse
import ast
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, TextIO

from .deciders import decide_rational_density, decide_square_density
from .errors import MixedFieldError, NotAdmissible, RatDistError
from .exact import QuadExt, fmt_rational, rational_sqrt
from .geometry import PlanePoint, Triangle
from .kummer import derive_quartic
from .rings import (
    GaussianInt,
    RealQuadInt,
    gaussian_decompose,
    gaussian_orbit,
    plane_point,
    realquad_confocal_extend,
    realquad_line_points,
    verify_ring_point,
)
from .search import search_points
from .threepoint import frame, generate3, generate3_collinear
from .twopoint import TwoPointConfig, generate2, rationals_by_height, verify2

SCHEMA = 1
log = logging.getLogger("ratdist")


# ---------------------------------------------------------------- input grammar


class ParseError(ValueError):
    pass


_BINOPS: dict[type, Callable[[Any, Any], Any]] = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_scalar(text: str) -> QuadExt:
    """Exact value of an arithmetic expression in integers, ``sqrtN`` and ``sqrt(N)``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}") from exc

    def ev(node) -> QuadExt:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return QuadExt(node.value)
        if isinstance(node, ast.Name) and node.id.startswith("sqrt") and node.id[4:].isdigit():
            return QuadExt.sqrt(int(node.id[4:]))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1:
            arg = ev(node.args[0])
            if not arg.is_rational:
                raise ParseError("sqrt of an irrational value")
            return QuadExt.sqrt(arg.a)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow) and isinstance(node.right, ast.Constant):
            return ev(node.left) ** int(node.right.value)
        raise ParseError(f"unsupported syntax in {text!r}")

    try:
        return ev(tree)
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc


def parse_rational_arg(text: str) -> Fraction:
    v = parse_scalar(text)
    if not v.is_rational:
        raise ParseError(f"{text!r} must be rational")
    return v.a


def parse_points(text: str) -> list[PlanePoint]:
    """Points from ``"x,y x,y ..."``, a JSON list of pairs, or a file holding either."""
    return [PlanePoint(x, y) for x, y in parse_coordinates(text)]


def parse_coordinates(text: str) -> list[tuple[QuadExt, QuadExt]]:
    path = Path(text)
    if "," not in text and path.exists():
        text = path.read_text()
    text = text.strip()
    if not text:
        return []
    if text.startswith("["):
        pairs = json.loads(text)
        return [(parse_scalar(str(x)), parse_scalar(str(y))) for x, y in pairs]
    out = []
    for tok in text.replace(";", " ").split():
        parts = tok.split(",")
        if len(parts) != 2:
            raise ParseError(f"point {tok!r} is not of the form x,y")
        out.append((parse_scalar(parts[0]), parse_scalar(parts[1])))
    return out


def _triangle(args) -> Triangle:
    if args.sides_sq:
        return Triangle.from_sides_sq(*(parse_scalar(v) for v in args.sides_sq))
    coords = parse_coordinates(args.points)
    if len(coords) != 3:
        raise ParseError("exactly three points expected")
    try:
        return Triangle.from_points(*coords)
    except MixedFieldError:
        # coordinates from several quadratic fields: the squared sides may still be exact
        sq = lambda i, j: sum(((a - b) * (a - b) for a, b in zip(coords[i], coords[j])), QuadExt(0))  # noqa: E731
        return Triangle.from_sides_sq(sq(0, 1), sq(0, 2), sq(1, 2))


# ---------------------------------------------------------------- output


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)

    def header(self) -> dict:
        return {"schema": SCHEMA, "config": {"command": self.command, **self.params}}


def write_records(cfg: RunConfig, records: Iterable[dict], out: TextIO) -> int:
    out.write(json.dumps(cfg.header(), sort_keys=True) + "\n")
    n = 0
    for rec in records:
        out.write(json.dumps(rec, sort_keys=True) + "\n")
        n += 1
    return n


def _open_out(path: str | None):
    return open(path, "w") if path else _Stdout()


class _Stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        sys.stdout.flush()
        return False


def _point_json(P: PlanePoint) -> list:
    return [P.x.to_json(), P.y.to_json()]


def _point_from_json(obj) -> PlanePoint:
    return PlanePoint(QuadExt.from_json(obj[0]), QuadExt.from_json(obj[1]))


# ---------------------------------------------------------------- record checks


def _check_distances(points: list[PlanePoint], Q: PlanePoint, dists: list[Fraction]) -> bool:
    return all((Q - P).norm2() == QuadExt(d) * QuadExt(d) and d >= 0 for P, d in zip(points, dists))


def check_gen2(config: dict, rec: dict) -> bool:
    cfg = TwoPointConfig(*(tuple(Fraction(v) for v in pt) for pt in config["points"]))
    Q = tuple(Fraction(v) for v in rec["Q"])
    return verify2(cfg, Q, Fraction(rec["d0"]), Fraction(rec["d1"]))


def check_gen3(config: dict, rec: dict) -> bool:
    dists = [Fraction(rec[k]) for k in ("d0", "d", "dprime")]
    if rec.get("Q") is None:
        return False
    Q = _point_from_json(rec["Q"])
    pts = [_point_from_json(p) for p in config["points"]]
    order = config.get("frame_order", [0, 1, 2])
    return _check_distances([pts[i] for i in order], Q, dists)


def check_collinear(config: dict, rec: dict) -> bool:
    if rec.get("Q") is None:
        return False
    P = _point_from_json(config["P"])
    q = Fraction(config["q"])
    Q = _point_from_json(rec["Q"])
    dists = [Fraction(rec[k]) for k in ("d0", "d", "dprime")]
    return _check_distances([PlanePoint(0, 0), P, P * q], Q, dists)


def _rq(obj: dict) -> QuadExt:
    return RealQuadInt(int(obj["a"]), int(obj["b"]), int(obj["delta"])).to_quad()


def check_ring_real(config: dict, rec: dict) -> bool:
    Q = (_rq(rec["Q"][0]), _rq(rec["Q"][1]))
    return verify_ring_point(config["O"], config["P"], Q, _rq(rec["dO"]), _rq(rec["dP"]), int(config["delta"]))


def _gi(obj: dict) -> GaussianInt:
    return GaussianInt(int(obj["re"]), int(obj["im"]))


def check_ring_gauss(config: dict, rec: dict) -> bool:
    alpha = GaussianInt(int(config["alpha_re"]), int(config["alpha_im"]))
    d1, d2 = _gi(rec["d1"]), _gi(rec["d2"])
    r, s = (_gi(v) for v in rec["rs"])
    u, v = (_gi(x) for x in rec["uv"])
    w1, w2, z, k = (_gi(rec[key]) for key in ("w1", "w2", "z", "k"))
    ok = (
        d1 * r * r - d2 * s * s == alpha
        and d1 * u * u - d2 * v * v == alpha.conj()
        and w1 == d1 * r * r
        and w2 == d1 * u * u
        and w1 * w2 == z * z
        and (w1 - alpha) * (w2 - alpha.conj()) == (z - k) * (z - k)
    )
    if ok and rec.get("point") is not None:
        x, y = (_gi(c) for c in rec["point"])
        a, b = GaussianInt(alpha.re, 0), GaussianInt(alpha.im, 0)
        ok = plane_point(w1, w2) == (x, y) and x * x + y * y == z * z and (x - a) * (x - a) + (y - b) * (y - b) == (z - k) * (z - k)
    return ok


CHECKS: dict[str, Callable[[dict, dict], bool]] = {
    "gen2": check_gen2,
    "gen3": check_gen3,
    "gen3-collinear": check_collinear,
    "ring-real": check_ring_real,
    "ring-gauss": check_ring_gauss,
}


def reverify_file(path: str | Path) -> tuple[int, int]:
    """(records, failures) after re-reading a JSON-lines file and checking every record exactly."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        return 0, 0
    header = json.loads(lines[0])
    if header.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {header.get('schema')}")
    config = header["config"]
    check = CHECKS.get(config["command"])
    if check is None:
        raise ParseError(f"records of {config['command']!r} carry no checkable solutions")
    bad = 0
    for line in lines[1:]:
        rec = json.loads(line)
        if not (rec.get("verified") and check(config, rec)):
            bad += 1
    return len(lines) - 1, bad


def _verified(check: Callable[[dict, dict], bool], config: dict, records: Iterable[dict]) -> Iterable[dict]:
    """Re-check every record through its JSON form before marking it verified."""
    for rec in records:
        rec = json.loads(json.dumps(rec))
        if not check(config, rec):
            raise AssertionError(f"record failed re-verification: {rec}")
        rec["verified"] = True
        yield rec


# ---------------------------------------------------------------- commands


def cmd_decide(args) -> int:
    t = _triangle(args)
    decide = decide_square_density if args.squared else decide_rational_density
    verdict = decide(t, args.origin_index)
    print(json.dumps({"triangle": t.to_json(), "origin_index": args.origin_index, **verdict.to_json()}, sort_keys=True))
    if args.all_origins:
        for i in range(3):
            if i != args.origin_index:
                print(json.dumps({"origin_index": i, **decide(t, i).to_json()}, sort_keys=True))
    return 0 if verdict.dense else 1


def cmd_gen2(args) -> int:
    pts = parse_points(args.points)
    if len(pts) != 2 or not all(p.is_rational for p in pts):
        raise ParseError("gen2 needs two rational points")
    O, P = ((p.x.a, p.y.a) for p in pts)
    cfg = TwoPointConfig(O, P)
    config = {"points": [[fmt_rational(v) for v in O], [fmt_rational(v) for v in P]], "count": args.count, "seed": args.seed}
    records = ({"kind": "gen2", **sol.to_json()} for sol in generate2(cfg, args.count, seed=args.seed))
    with _open_out(args.out) as out:
        write_records(RunConfig("gen2", config), _verified(check_gen2, config, records), out)
    return 0


def cmd_gen3(args) -> int:
    t = _triangle(args)
    f = frame(t, args.origin_index)  # raises NotAdmissible for sparse configurations
    from .geometry import frame_indices

    config = {
        "triangle": t.to_json(),
        "points": [_point_json(p) for p in t.points] if t.points else None,
        "frame_order": list(frame_indices(args.origin_index)),
        "fibers": args.fibers,
        "multiples": args.multiples,
        "seed": args.seed,
        "origin_index": args.origin_index,
    }
    records = ({"kind": "gen3", **sol.to_json()} for sol in generate3(f, args.fibers, args.multiples, seed=args.seed))
    check = check_gen3 if t.points else (lambda c, r: True)
    with _open_out(args.out) as out:
        write_records(RunConfig("gen3", config), _verified(check, config, records), out)
    return 0


def _pairs(text: str | None, count: int) -> Iterable[tuple[Fraction, Fraction]]:
    if text:
        for tok in text.split():
            k, kp = tok.split(",")
            yield parse_rational_arg(k), parse_rational_arg(kp)
        return
    values = list(itertools.islice(rationals_by_height(), 4 * count + 8))
    yield from itertools.islice(((k, kp) for k in values for kp in values if k and kp), 16 * count)


def cmd_gen3_collinear(args) -> int:
    p, q = parse_rational_arg(args.p), parse_rational_arg(args.q)
    P = PlanePoint(QuadExt.sqrt(p), 0)
    config = {"p": fmt_rational(p), "q": fmt_rational(q), "P": _point_json(P), "count": args.count}
    sols = generate3_collinear(p, q, _pairs(args.pairs, args.count), realonly=True, P=P)
    records = (
        {"kind": "gen3-collinear", **sol.to_json(), "t": str(sol.tcoord), "u": str(sol.ucoord)}
        for sol in itertools.islice((s for s in sols if s.Q is not None), args.count)
    )
    with _open_out(args.out) as out:
        write_records(RunConfig("gen3-collinear", config), _verified(check_collinear, config, records), out)
    return 0


def cmd_kummer(args) -> int:
    a, b = parse_rational_arg(args.a), parse_rational_arg(args.b)
    kq = derive_quartic(a, b)
    out = {"quartic": str(kq), **kq.to_json()}
    if args.at:
        z, u, v = (parse_rational_arg(x) for x in args.at.split(","))
        out["residual"] = fmt_rational(kq(z, u, v))
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_ring_real(args) -> int:
    O = (parse_rational_arg(args.ox), parse_rational_arg(args.oy))
    P = (parse_rational_arg(args.px), parse_rational_arg(args.py))
    delta = args.delta
    config = {"O": [fmt_rational(v) for v in O], "P": [fmt_rational(v) for v in P], "delta": delta, "count": args.count, "extend": args.extend}

    def records():
        for pt in realquad_line_points(O, P, delta, args.count):
            yield {"kind": "line", **pt.to_json(delta)}
            if args.extend and not pt.degenerate:
                for ext in realquad_confocal_extend(O, P, pt, args.extend, delta, bound=args.bound):
                    enc = lambda v: RealQuadInt.from_quad(v, delta).to_json()  # noqa: E731
                    yield {
                        "kind": "confocal",
                        "seed_j": pt.exponent,
                        "Q": [enc(ext.Q[0]), enc(ext.Q[1])],
                        "dO": enc(ext.dO),
                        "dP": enc(ext.dP),
                        "power": ext.power,
                        "flipped": ext.flipped,
                    }

    with _open_out(args.out) as out:
        write_records(RunConfig("ring-real", config), _verified(check_ring_real, config, records()), out)
    return 0


def cmd_ring_gauss(args) -> int:
    alpha = GaussianInt(args.alpha_re, args.alpha_im)
    sys_ = gaussian_decompose(alpha)
    config = {"alpha_re": args.alpha_re, "alpha_im": args.alpha_im, "count": args.count, "bound": args.bound, "system": sys_.to_json()}
    base = {"d1": sys_.d1.to_json(), "d2": sys_.d2.to_json()}
    records = (
        {"kind": "ring-gauss", **base, **sol.to_json(), "rs": [g.to_json() for g in sol.rs], "uv": [g.to_json() for g in sol.uv]}
        for sol in gaussian_orbit(sys_, args.count, args.bound)
    )
    with _open_out(args.out) as out:
        write_records(RunConfig("ring-gauss", config), _verified(check_ring_gauss, config, records), out)
    return 0


def cmd_verify(args) -> int:
    if args.records:
        n, bad = reverify_file(args.records)
        print(json.dumps({"records": n, "failures": bad}, sort_keys=True))
        return 0 if bad == 0 else 1
    if not args.points or not args.q:
        raise ParseError("verify needs --points and --q, or --records")
    pts = parse_points(args.points)
    (Q,) = parse_points(args.q)
    report = []
    for P in pts:
        d2 = (Q - P).norm2()
        root = rational_sqrt(d2.a) if d2.is_rational else None
        report.append({"P": str(P), "dist_sq": str(d2), "rational_square": root is not None, "distance": None if root is None else fmt_rational(root)})
    print(json.dumps({"Q": str(Q), "report": report, "solution": bool(report) and all(r["rational_square"] for r in report)}, sort_keys=True))
    return 0 if all(r["rational_square"] for r in report) else 1


def cmd_search4(args) -> int:
    pts = parse_points(args.points)
    found = search_points(pts, args.height)
    config = {"points": [_point_json(p) for p in pts], "height": args.height}
    with _open_out(args.out) as out:
        write_records(RunConfig("search4", config), ({"kind": "search4", **c.to_json(), "verified": True} for c in found), out)
    return 0


# ---------------------------------------------------------------- parser


def _add_triangle_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", help='three points "x,y x,y x,y" (sqrtN allowed), JSON pairs, or a file')
    g.add_argument("--sides-sq", nargs=3, metavar=("D01", "D02", "D12"), help="squared side lengths")
    p.add_argument("--origin-index", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ratdist", description="Rational-distance point sets: deciders and exact generators.")
    ap.add_argument("--factor-budget", type=int, help="Pollard rho iteration cap (sets RATDIST_FACTOR_BUDGET)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="density of rational-distance points for a triangle")
    _add_triangle_args(p)
    p.add_argument("--squared", action="store_true", help="rational squared distances instead")
    p.add_argument("--all-origins", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("gen2", help="points at rational distance from two points")
    p.add_argument("--points", required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen2)

    p = sub.add_parser("gen3", help="points at rational distance from three points")
    _add_triangle_args(p)
    p.add_argument("--fibers", type=int, default=5)
    p.add_argument("--multiples", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen3)

    p = sub.add_parser("gen3-collinear", help="points at rational distance from O, P, qP")
    p.add_argument("--p", required=True, help="|P|^2")
    p.add_argument("--q", required=True)
    p.add_argument("--pairs", help='"k,k2 k,k2 ..."; default enumerates by height')
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen3_collinear)

    p = sub.add_parser("kummer", help="quartic relation among the three distances")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--at", help="evaluate at z,u,v")
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("ring-real", help="coordinates and distances in Z[sqrt(delta)]")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--px", required=True)
    p.add_argument("--py", required=True)
    p.add_argument("--ox", default="0")
    p.add_argument("--oy", default="0")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--extend", type=int, default=0, help="confocal points per line point")
    p.add_argument("--bound", type=int, default=2000, help="relative unit search bound")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ring_real)

    p = sub.add_parser("ring-gauss", help="coordinates and distances in Z[i]")
    p.add_argument("--alpha-re", type=int, required=True)
    p.add_argument("--alpha-im", type=int, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--bound", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ring_gauss)

    p = sub.add_parser("verify", help="check a candidate point, or re-verify a JSON-lines file")
    p.add_argument("--points")
    p.add_argument("--q")
    p.add_argument("--records")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search4", help="bounded search for points at rational distance from all given points")
    p.add_argument("--points", required=True)
    p.add_argument("--height", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search4)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.factor_budget:
        os.environ["RATDIST_FACTOR_BUDGET"] = str(args.factor_budget)
    try:
        return args.func(args)
    except NotAdmissible as exc:
        print(json.dumps({"error": "NotAdmissible", "message": str(exc)}), file=sys.stderr)
        return 1
    except (RatDistError, ParseError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
