"""Timing of the bounded search around the unit square for growing height bounds."""

from __future__ import annotations

import argparse
import time

from ratdist.geometry import PlanePoint
from ratdist.search import rationals_up_to_height, search_points

SQUARE = [PlanePoint(0, 0), PlanePoint(1, 0), PlanePoint(1, 1), PlanePoint(0, 1)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--heights", type=int, nargs="+", default=[10, 20, 30, 50])
    args = ap.parse_args()
    for h in args.heights:
        t0 = time.perf_counter()
        found = search_points(SQUARE, h)
        n = len(rationals_up_to_height(h)) ** 2
        print(f"H={h}: {n} candidates, {len(found)} hits, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
