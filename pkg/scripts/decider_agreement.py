"""Agreement of the two density deciders and the dense share on random triangles."""

from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from ratdist.deciders import check_condition_iv, decide_rational_density
from ratdist.errors import RatDistError
from ratdist.geometry import Triangle


def random_sides(rng: random.Random, top: int) -> Triangle:
    while True:
        try:
            return Triangle.from_sides_sq(*(Fraction(rng.randint(1, top), rng.randint(1, 6)) for _ in range(3)))
        except (ValueError, RatDistError):
            continue


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--top", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    agree = dense = 0
    for _ in range(args.count):
        t = random_sides(rng, args.top)
        a, b = decide_rational_density(t).dense, check_condition_iv(t).dense
        agree += a == b
        dense += a
    print(f"{agree}/{args.count} agree, {dense} dense, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
