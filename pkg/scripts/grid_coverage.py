"""Grid coverage of two-point solutions over [-2,2]^2 for several seeds."""

from __future__ import annotations

import argparse
import math
import time
from fractions import Fraction

from ratdist.twopoint import TwoPointConfig, generate2


def coverage(count: int, seed: int, cells: int) -> int:
    sols = generate2(TwoPointConfig((0, 0), (1, 0)), count, seed=seed)
    scale = Fraction(cells, 4)
    hit = {(math.floor((s.Q[0] + 2) * scale), math.floor((s.Q[1] + 2) * scale)) for s in sols if -2 <= s.Q[0] < 2 and -2 <= s.Q[1] < 2}
    return len(hit)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--cells", type=int, default=10, help="cells per axis")
    args = ap.parse_args()
    for seed in range(args.seeds):
        t0 = time.perf_counter()
        n = coverage(args.count, seed, args.cells)
        print(f"seed {seed}: {n}/{args.cells**2} cells, {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
