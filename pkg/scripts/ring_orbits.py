"""Orbit sizes and coefficient growth for the real quadratic and Gaussian constructions."""

from __future__ import annotations

import argparse

from ratdist.rings import GaussianInt, gaussian_decompose, gaussian_orbit, realquad_confocal_extend, realquad_line_points


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--bound", type=int, default=300, help="relative unit search bound")
    args = ap.parse_args()
    for delta in (2, 3, 5, 6, 7):
        pts = list(realquad_line_points((0, 0), (3, 4), delta, args.count))
        digits = len(str(abs(pts[-1].dO.a).numerator))
        ext = sum(len(list(realquad_confocal_extend((0, 0), (3, 4), p, 2, delta, bound=args.bound))) for p in pts[:3])
        print(f"delta={delta}: {len(pts)} line points (last distance {digits} digits), {ext} confocal points from 3 seeds")
    for alpha in (GaussianInt(3, 4), GaussianInt(1, 1), GaussianInt(0, 3), GaussianInt(5, 12), GaussianInt(2, 7)):
        sys_ = gaussian_decompose(alpha)
        sols = list(gaussian_orbit(sys_, args.count))
        with_point = sum(s.point is not None for s in sols)
        print(f"alpha={alpha}: d1={sys_.d1}, d2={sys_.d2}, {len(sols)} orbit solutions, {with_point} plane points")


if __name__ == "__main__":
    main()
