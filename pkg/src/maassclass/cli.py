"""Command line front end: ``maassclass <subcommand> ...``.

Exit codes: 0 success, 2 bad input, 3 unusable form, 4 recognition failure,
5 bound violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import mpmath

from .bounds import BoundInputs, bound_report, bound_sweep
from .classpoly import RecognitionError, RecognitionSettings, class_polynomial
from .evaluator import EvalConfig
from .formexpr import FormSyntaxError, WeightMismatchError, expand, parse_form_expr
from .irreducibility import irreducible_over_q, quadratic_splitting_field
from .poincare import verification_table
from .qseries import SeriesError, principal_part
from .quadforms import InvalidDiscriminant, Discriminant, cm_point, enumerate_reduced, primitive_subset

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_FORM, EXIT_RECOGNITION, EXIT_BOUND = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


@dataclass(frozen=True)
class RunConfig:
    precision: int = 192
    trunc: int = 128
    tol: str = "1e-20"
    c_param: float = 1.5
    format: str = "json"
    seed: int = 0
    threads: int = 1

    @property
    def eval_config(self) -> EvalConfig:
        return EvalConfig(self.precision, self.trunc, float(self.tol))

    @property
    def recognition(self) -> RecognitionSettings:
        return RecognitionSettings(im_tol=float(self.tol), round_tol=float(self.tol))

    def to_json(self) -> dict:
        return {"precision": self.precision, "trunc": self.trunc, "tol": self.tol}


def _disc(value: int) -> Discriminant:
    try:
        return Discriminant(value)
    except InvalidDiscriminant as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _form(text: str, N: int):
    """Parse and expand; return (series, k)."""
    try:
        expr = parse_form_expr(text)
    except (FormSyntaxError, WeightMismatchError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    w = expr.weight
    if w > 0 or w % 2:
        raise CliError(f"form {text!r} has weight {w}; need weight -2k with k >= 0", EXIT_FORM)
    try:
        F = expand(expr, N)
        principal_part(F)
    except ZeroDivisionError as exc:
        raise CliError(f"form {text!r} cannot be expanded: {exc}", EXIT_FORM) from None
    except SeriesError as exc:
        raise CliError(f"form {text!r}: {exc}", EXIT_FORM) from None
    return F, -w // 2


def _principal_json(F) -> dict:
    m, a = principal_part(F)
    return {"m": m, "a": [str(x) for x in a]}


def cmd_forms(args, cfg: RunConfig) -> dict:
    disc = _disc(args.disc)
    forms = enumerate_reduced(disc)
    prim = primitive_subset(forms)
    shown = prim if args.primitive else forms
    points = []
    for q in shown:
        pt = cm_point(q, cfg.precision)
        points.append({"form": q.as_list(), "re": mpmath.nstr(pt.re, 30), "im": mpmath.nstr(pt.im, 30)})
    return {
        "command": "forms",
        "disc": disc.value,
        "fundamental": disc.is_fundamental,
        "primitive_only": bool(args.primitive),
        "forms": [q.as_list() for q in shown],
        "class_number": len(prim),
        "cm_points": points,
    }


def cmd_classpoly(args, cfg: RunConfig) -> dict:
    disc = _disc(args.disc)
    F, k = _form(args.form, cfg.trunc)
    out = {
        "command": "classpoly",
        "form": args.form,
        "disc": disc.value,
        "k": k,
        "principal_part": _principal_json(F),
        "config": cfg.to_json(),
    }
    try:
        poly = class_polynomial(disc, F, k, cfg.eval_config, cfg.recognition, threads=cfg.threads)
    except RecognitionError as exc:
        out["error"] = {"type": type(exc).__name__, "message": str(exc), "coefficient_index": exc.index}
        raise CliError(str(exc), EXIT_RECOGNITION, out) from None
    verdict = irreducible_over_q(poly)
    out["polynomial"] = poly.to_json()
    out["irreducibility"] = verdict.to_json()
    out["splitting_field"] = quadratic_splitting_field(poly) if poly.degree == 2 and verdict.is_irreducible else None
    return out


def _bound_inputs(args, cfg: RunConfig, disc: Discriminant) -> BoundInputs:
    if not args.c > 1:
        raise CliError(f"--c must exceed 1, got {args.c}", EXIT_INPUT)
    F, k = _form(args.form, cfg.trunc)
    if k < 1:
        raise CliError("the irreducibility criteria need weight -2k with k >= 1", EXIT_FORM)
    m, a = principal_part(F)
    try:
        return BoundInputs(k, m, a, disc, args.c)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def cmd_bound(args, cfg: RunConfig) -> dict:
    disc = _disc(args.disc)
    inp = _bound_inputs(args, cfg, disc)
    return {"command": "bound", "form": args.form, "report": bound_report(inp).to_json()}


def cmd_bound_sweep(args, cfg: RunConfig) -> dict:
    if args.dmax < 3:
        raise CliError("--dmax must be at least 3", EXIT_INPUT)
    inp = _bound_inputs(args, cfg, Discriminant(-3))
    sweep = bound_sweep(inp, args.dmax)
    return {"command": "bound-sweep", "form": args.form, "c": repr(args.c), "dmax": args.dmax, **sweep.to_json()}


def cmd_verify_poincare(args, cfg: RunConfig) -> dict:
    if args.k < 1:
        raise CliError("--k must be at least 1", EXIT_INPUT)
    if args.n < 1 or args.lmax < 0 or args.cmax < 1:
        raise CliError("--n and --cmax must be positive and --lmax nonnegative", EXIT_INPUT)
    table = verification_table(args.n, args.k, args.lmax, args.cmax, threads=cfg.threads)
    out = {
        "command": "verify-poincare",
        "n_max": args.n,
        "k_max": args.k,
        "l_max": args.lmax,
        "c_max": args.cmax,
        "rows": [e.to_json() for e in table],
        "all_pass": all(e.passes for e in table),
    }
    if not out["all_pass"]:
        raise CliError("coefficient bound violated", EXIT_BOUND, out)
    return out


def _text(payload: dict) -> str:
    cmd = payload.get("command")
    if cmd == "forms":
        lines = [f"D = {payload['disc']} (fundamental: {payload['fundamental']})"]
        lines += [f"  [{a},{b},{c}]" for a, b, c in payload["forms"]]
        lines.append(f"h = {payload['class_number']}")
        return "\n".join(lines)
    if cmd == "classpoly" and "polynomial" in payload:
        v = payload["irreducibility"]
        lines = [
            f"Hhat_{{{payload['disc']}, {payload['form']}}}(x) = {payload['polynomial']['expression']}",
            f"recognition: {payload['polynomial']['recognition_report']}",
            f"irreducibility: {v['verdict']} (certificate: {v['certificate']})",
        ]
        if payload.get("splitting_field") is not None:
            lines.append(f"splitting field: Q(sqrt({payload['splitting_field']}))")
        return "\n".join(lines)
    if cmd == "bound":
        r = payload["report"]
        return "\n".join(f"{key}: {val}" for key, val in r.items())
    if cmd == "bound-sweep":
        good = [str(r["disc"]) for r in payload["rows"] if r["theorem"]]
        return (
            f"theorem guarantees: {' '.join(good) or '(none)'}\n"
            f"theorem crossover: {payload['theorem_crossover']}\n"
            f"corollary crossover: {payload['corollary_crossover']}"
        )
    if cmd == "verify-poincare":
        lines = ["n k  l  partial                bound                  ratio        pass"]
        for r in payload["rows"]:
            lines.append(f"{r['n']} {r['k']} {r['l']:2d} {r['partial']:>22} {r['bound']:>22} {r['ratio']:>12} {r['pass']}")
        return "\n".join(lines)
    return json.dumps(payload, indent=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=192, help="working precision in bits")
    common.add_argument("--trunc", type=int, default=128, help="q-series truncation order N")
    common.add_argument("--tol", default="1e-20", help="recognition and tail tolerance")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: $MAASSCLASS_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="maassclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forms", parents=[common], help="reduced forms, class number and CM points")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--primitive", action="store_true")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("classpoly", parents=[common], help="class polynomial of a raised form")
    p.add_argument("--form", required=True)
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_classpoly)

    p = sub.add_parser("bound", parents=[common], help="irreducibility criteria at one discriminant")
    p.add_argument("--form", required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--c", type=float, default=1.5)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("bound-sweep", parents=[common], help="criteria over all fundamental D with |D| <= dmax")
    p.add_argument("--form", required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--c", type=float, default=1.5)
    p.set_defaults(func=cmd_bound_sweep)

    p = sub.add_parser("verify-poincare", parents=[common], help="Poincare coefficient partial sums vs. bounds")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--lmax", type=int, default=10)
    p.add_argument("--cmax", type=int, default=2000)
    p.set_defaults(func=cmd_verify_poincare)
    return parser


def _threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    try:
        return max(1, int(os.environ.get("MAASSCLASS_THREADS", "1")))
    except ValueError:
        return 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        float(args.tol)
        cfg = RunConfig(
            precision=args.precision,
            trunc=args.trunc,
            tol=args.tol,
            c_param=getattr(args, "c", 1.5),
            format=args.format,
            seed=args.seed,
            threads=_threads(args.threads),
        )
        cfg.eval_config
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        payload = args.func(args, cfg)
        code = EXIT_OK
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.payload is None:
            return exc.code
        payload, code = exc.payload, exc.code
    payload = {"schema": SCHEMA, **payload}
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_text(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
