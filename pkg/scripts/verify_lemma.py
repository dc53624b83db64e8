"""Poincare coefficient partial sums against the coefficient bound, plus the q-series cross-check."""

import argparse
import time

from maassclass.formexpr import expand
from maassclass.poincare import poincare_coefficient, verification_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--lmax", type=int, default=10)
    ap.add_argument("--cmax", type=int, default=5000)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    table = verification_table(args.n, args.k, args.lmax, args.cmax, threads=args.threads)
    print(" n  k   l   partial              bound                ratio")
    for e in table:
        print(f"{e.n:2d} {e.k:2d} {e.l:3d}  {e.partial_value:+.12e}  {e.bound_value:.12e}  {e.ratio:.4f}")
    print(f"all within bound: {all(e.passes for e in table)}  ({time.perf_counter() - t0:.1f}s)")

    F = expand("E10/Delta", 10)
    print("\nE10/Delta from Poincare partial sums (c <= 2000):")
    for l in range(0, 6):
        est = poincare_coefficient(1, 1, l, 2000).partial_value
        print(f"  q^{l}: {est:+.6f}   exact {F[l]}")


if __name__ == "__main__":
    main()
