"""Share of fibers on which section A has infinite order, for a few triangles."""

from __future__ import annotations

import argparse

from ratdist.exact import QuadExt
from ratdist.geometry import Triangle
from ratdist.threepoint import frame, non_torsion_rate

TRIANGLES = {
    "(0,0),(3,0),(0,4)": ((0, 0), (3, 0), (0, 4)),
    "(0,0),(1,0),(0,1)": ((0, 0), (1, 0), (0, 1)),
    "(0,0),(1,0),(0,sqrt3)": ((0, 0), (1, 0), (0, QuadExt.sqrt(3))),
    "(0,0),(5,0),(3,4)": ((0, 0), (5, 0), (3, 4)),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fibers", type=int, nargs="+", default=[20, 40, 100])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, pts in TRIANGLES.items():
        f = frame(Triangle.from_points(*pts))
        rates = ", ".join(f"{n}: {non_torsion_rate(f, n, seed=args.seed):.2f}" for n in args.fibers)
        print(f"{name}  {rates}")


if __name__ == "__main__":
    main()
