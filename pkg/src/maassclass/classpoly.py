"""Class polynomials prod (x - P_F(tau_Q)) and exact rational recognition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from ._parallel import pooled_map
from .evaluator import EvalConfig, raise_value
from .qseries import QSeries, j_function
from .quadforms import (
    QuadForm,
    as_discriminant,
    class_number,
    cm_point,
    divisor_decomposition,
    enumerate_reduced,
    primitive_reduced,
)


class RecognitionError(ArithmeticError):
    def __init__(self, message: str, index: int, value=None):
        super().__init__(f"coefficient {index}: {message}")
        self.index = index
        self.value = value


class ImaginaryResidueTooLarge(RecognitionError):
    pass


class NoCloseRational(RecognitionError):
    pass


@dataclass(frozen=True)
class RecognitionSettings:
    im_tol: float = 1e-20
    round_tol: float = 1e-20
    denom_bound: int = 10**12


@dataclass
class ComplexPolynomial:
    """Monic polynomial; ``coeffs[i]`` multiplies x^i."""

    coeffs: list[mpmath.mpc]
    errors: list[mpmath.mpf]
    precision: int = 192

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class RecognitionReport:
    max_imag: str
    max_round_distance: str
    denom_bound: int
    im_tol: float
    round_tol: float
    precision: int

    def to_json(self) -> dict:
        return {
            "max_imag": self.max_imag,
            "max_round_distance": self.max_round_distance,
            "denom_bound": self.denom_bound,
            "im_tol": f"{self.im_tol:.3e}",
            "round_tol": f"{self.round_tol:.3e}",
            "precision": self.precision,
        }


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients; ``coeffs[i]`` multiplies x^i."""

    coeffs: tuple[Fraction, ...]
    report: RecognitionReport | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    def scale_variable(self, s) -> "RationalPolynomial":
        """The polynomial x -> self(s*x)."""
        return RationalPolynomial(tuple(c * Fraction(s) ** i for i, c in enumerate(self.coeffs)))

    def scale(self, s) -> "RationalPolynomial":
        return RationalPolynomial(tuple(c * Fraction(s) for c in self.coeffs))

    def divmod(self, other: "RationalPolynomial") -> tuple["RationalPolynomial", "RationalPolynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial((0,)), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            t = r[i + len(other.coeffs) - 1] / lead
            q[i] = t
            for j, c in enumerate(other.coeffs):
                r[i + j] -= t * c
        return RationalPolynomial(tuple(q)), RationalPolynomial(tuple(r[: len(other.coeffs) - 1] or [0]))

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0 and self.degree > 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        d = {"degree": self.degree, "coefficients": [str(c) for c in self.coeffs], "expression": str(self)}
        if self.report is not None:
            d["recognition_report"] = self.report.to_json()
        return d


def _conjugate_key(q: QuadForm) -> tuple[int, int, int]:
    return (q.a, abs(q.b), q.c)


def _evaluate_roots(forms, F, k, cfg, threads):
    def one(q):
        tau = cm_point(q, cfg.precision).tau
        return raise_value(F, k, tau, cfg)

    return pooled_map(one, forms, threads, cfg.precision)


def _poly_mul(a, b):
    out = [mpmath.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def multiply_roots(roots, errors=None, precision: int = 192) -> ComplexPolynomial:
    """Monic polynomial with the given roots, in the given order.

    Coefficient errors are bounded by comparing prod (x + |r| + e) with prod (x + |r|).
    """
    if errors is None:
        errors = [mpmath.mpf(0)] * len(roots)
    with mpmath.workprec(precision):
        coeffs = [mpmath.mpc(1)]
        hi = [mpmath.mpf(1)]
        lo = [mpmath.mpf(1)]
        for r, e in zip(roots, errors):
            coeffs = _poly_mul(coeffs, [-r, mpmath.mpc(1)])
            hi = [x.real for x in _poly_mul(hi, [abs(r) + e, 1])]
            lo = [x.real for x in _poly_mul(lo, [abs(r), 1])]
        eps = mpmath.mpf(2) ** (4 - precision)
        errs = [h - l + eps * h * (len(roots) + 1) for h, l in zip(hi, lo)]
        return ComplexPolynomial(coeffs, errs, precision)


def build_hhat(
    D, F: QSeries, k: int, cfg: EvalConfig = EvalConfig(), threads: int | None = None, forms=None
) -> ComplexPolynomial:
    """Numerical prod over primitive reduced forms of (x - P_F(tau_Q)).

    Forms [a, b, c] and [a, -b, c] give complex conjugate roots; each such
    pair is multiplied first so that the running product stays real.
    """
    disc = as_discriminant(D)
    if forms is None:
        forms = primitive_reduced(disc)
    values = _evaluate_roots(forms, F, k, cfg, threads)
    groups: dict[tuple, list] = {}
    for q, rv in zip(forms, values):
        groups.setdefault(_conjugate_key(q), []).append(rv)
    with mpmath.workprec(cfg.precision):
        coeffs = [mpmath.mpc(1)]
        errs = [mpmath.mpf(0)]
        for key in sorted(groups):
            sub = multiply_roots([rv.value for rv in groups[key]], [rv.err_estimate for rv in groups[key]], cfg.precision)
            new = _poly_mul(coeffs, sub.coeffs)
            # |a*b - a'*b'| <= |a| eb + ea |b| + ea eb
            new_err = [mpmath.mpf(0)] * len(new)
            for i, (x, ex) in enumerate(zip(coeffs, errs)):
                for j, (y, ey) in enumerate(zip(sub.coeffs, sub.errors)):
                    new_err[i + j] += abs(x) * ey + ex * abs(y) + ex * ey
            coeffs, errs = new, new_err
    return ComplexPolynomial(coeffs, errs, cfg.precision)


def _to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if not man:
        return Fraction(0)
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def convergents(x: Fraction):
    """Continued fraction convergents p/q of x."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a = x.numerator // x.denominator
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)
        frac = x - a
        if frac == 0:
            return
        x = 1 / frac


def nearest_rational(x, round_tol: float, denom_bound: int) -> tuple[Fraction, Fraction]:
    """First convergent of x within round_tol with denominator <= denom_bound.

    Returns (rational, distance); raises LookupError if there is none.
    """
    fx = _to_fraction(x)
    for c in convergents(fx):
        if c.denominator > denom_bound:
            break
        dist = abs(fx - c)
        if dist < Fraction(round_tol):
            return c, dist
    raise LookupError("no rational within tolerance")


def recognize_rational(p: ComplexPolynomial, settings: RecognitionSettings = RecognitionSettings()) -> RationalPolynomial:
    max_im = mpmath.mpf(0)
    max_dist = Fraction(0)
    out = []
    with mpmath.workprec(p.precision):
        for i, c in enumerate(p.coeffs):
            c = mpmath.mpc(c)
            if abs(c.imag) >= settings.im_tol:
                raise ImaginaryResidueTooLarge(
                    f"|Im| = {mpmath.nstr(abs(c.imag), 5)} exceeds {settings.im_tol:g}", i, c
                )
            max_im = max(max_im, abs(c.imag))
            try:
                r, dist = nearest_rational(c.real, settings.round_tol, settings.denom_bound)
            except LookupError:
                raise NoCloseRational(
                    f"no rational with denominator <= {settings.denom_bound} within {settings.round_tol:g} "
                    f"of {mpmath.nstr(c.real, 30)}",
                    i,
                    c,
                ) from None
            max_dist = max(max_dist, dist)
            out.append(r)
    report = RecognitionReport(
        max_imag=mpmath.nstr(max_im, 6, min_fixed=1, max_fixed=0),
        max_round_distance=mpmath.nstr(mpmath.mpf(max_dist.numerator) / max_dist.denominator, 6, min_fixed=1, max_fixed=0),
        denom_bound=settings.denom_bound,
        im_tol=settings.im_tol,
        round_tol=settings.round_tol,
        precision=p.precision,
    )
    return RationalPolynomial(tuple(out), report)


def _bits_needed(p: ComplexPolynomial, settings: RecognitionSettings) -> int:
    biggest = max(max(abs(c) for c in p.coeffs), mpmath.mpf(1))
    tol = min(settings.im_tol, settings.round_tol)
    return int(mpmath.log(biggest, 2) - mpmath.log(tol, 2)) + 64


def class_polynomial(
    D,
    F: QSeries,
    k: int,
    cfg: EvalConfig = EvalConfig(),
    settings: RecognitionSettings = RecognitionSettings(),
    auto_precision: bool = True,
    threads: int | None = None,
    forms=None,
) -> RationalPolynomial:
    """Build and recognize prod (x - P_F(tau_Q)).

    With ``auto_precision`` the evaluation is repeated at a higher working
    precision when the coefficients are too large for the tolerances at
    ``cfg.precision``.
    """
    p = build_hhat(D, F, k, cfg, threads, forms)
    if auto_precision:
        need = _bits_needed(p, settings)
        if need > cfg.precision:
            p = build_hhat(D, F, k, cfg.with_(precision=need), threads, forms)
    return recognize_rational(p, settings)


def epsilon_one(a: int) -> int:
    return 1


def epsilon_mod12(a: int) -> int:
    """+1 when a = +-1 mod 12, else -1."""
    return 1 if a % 12 in (1, 11) else -1


def assemble_full(
    D,
    F: QSeries,
    k: int,
    cfg: EvalConfig = EvalConfig(),
    epsilon: Callable[[int], int] | dict = epsilon_one,
    settings: RecognitionSettings = RecognitionSettings(),
    threads: int | None = None,
) -> RationalPolynomial:
    """prod over a^2 | D of eps(a)^h(D/a^2) * Hhat_{D/a^2}(eps(a) x)."""
    eps = epsilon.__getitem__ if isinstance(epsilon, dict) else epsilon
    result = RationalPolynomial((1,))
    for a, d in divisor_decomposition(D):
        e = eps(a)
        if e not in (1, -1):
            raise ValueError(f"epsilon({a}) must be +1 or -1, got {e}")
        factor = class_polynomial(d, F, k, cfg, settings, threads=threads)
        factor = factor.scale_variable(e).scale(e ** class_number(d))
        result = result * factor
    return result


def direct_class_polynomial(D, F: QSeries, k: int, cfg: EvalConfig = EvalConfig(), settings=RecognitionSettings()):
    """prod over all reduced forms of discriminant D, primitive or not."""
    return class_polynomial(D, F, k, cfg, settings, forms=enumerate_reduced(D))


def hilbert_class_poly(D, cfg: EvalConfig = EvalConfig(), settings: RecognitionSettings = RecognitionSettings()):
    J = j_function(cfg.trunc_order)
    return class_polynomial(D, J, 0, cfg, settings)
