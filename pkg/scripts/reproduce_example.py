"""Class polynomials of E10/Delta raised once, for small fundamental discriminants.

Prints each polynomial with its irreducibility verdict, and for D = -15 also
the splitting field and the two roots.
"""

import argparse

import mpmath

from maassclass import EvalConfig, class_polynomial, cm_point, expand, irreducible_over_q, raise_value
from maassclass.irreducibility import quadratic_splitting_field
from maassclass.quadforms import fundamental_discriminants, primitive_reduced


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=60, help="largest |D| to list")
    ap.add_argument("--precision", type=int, default=192)
    ap.add_argument("--trunc", type=int, default=128)
    args = ap.parse_args()

    cfg = EvalConfig(precision=args.precision, trunc_order=args.trunc)
    F = expand("E10/Delta", args.trunc)
    for D in fundamental_discriminants(-args.dmax):
        p = class_polynomial(D, F, 1, cfg)
        v = irreducible_over_q(p)
        print(f"D = {D.value:5d}  h = {p.degree}  {v.kind:12s}  {p}")

    p = class_polynomial(-15, F, 1, cfg)
    print()
    print(f"D = -15: {p}")
    print(f"splitting field Q(sqrt({quadratic_splitting_field(p)}))")
    with mpmath.workprec(cfg.precision):
        for q in primitive_reduced(-15):
            r = raise_value(F, 1, cm_point(q, cfg.precision).tau, cfg).value
            print(f"  root at {q}: {mpmath.nstr(r.real, 25)}")


if __name__ == "__main__":
    main()
