"""Theorem and corollary guarantees across fundamental discriminants."""

import argparse

from maassclass.bounds import BoundInputs, bound_report, bound_sweep
from maassclass.formexpr import expand
from maassclass.qseries import principal_part


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--form", default="E10/Delta")
    ap.add_argument("--dmax", type=int, default=200)
    ap.add_argument("--c", type=float, default=1.5)
    args = ap.parse_args()

    F = expand(args.form, 20)
    k = -F.weight // 2
    m, a = principal_part(F)
    inp = BoundInputs(k, m, a, -3, args.c)
    sweep = bound_sweep(inp, args.dmax)
    print(f"F = {args.form}  k = {k}  m = {m}  c = {args.c}")
    print(" D      theorem  corollary  theorem_rhs")
    for d, t, c in zip(sweep.discriminants, sweep.theorem, sweep.corollary):
        rhs = bound_report(inp.with_disc(d)).theorem_rhs
        rhs_s = "n/a" if rhs is None else f"{float(rhs):.4f}"
        print(f"{d:5d}  {str(t):8s} {str(c):10s} {rhs_s}")
    print(f"theorem crossover: {sweep.theorem_crossover}")
    print(f"corollary crossover: {sweep.corollary_crossover}")
    print(f"corollary threshold: {float(bound_report(inp).corollary_threshold):.6f}")


if __name__ == "__main__":
    main()
