"""Explicit irreducibility criteria for class polynomials of raised forms.

All constants are evaluated from their defining expressions (not the
simplified numerical majorants) at ``DPS`` decimal digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .evaluator import pochhammer
from .qseries import bernoulli
from .quadforms import Discriminant, as_discriminant, fundamental_discriminants

DPS = 64
S_FLOOR = mpmath.mpf("1e-40")


def zeta_int(s: int, precision: int = 256) -> mpmath.mpf:
    """zeta(s) for integer s >= 2: a direct partial sum plus Euler-Maclaurin tail."""
    if s < 2:
        raise ValueError("zeta_int needs s >= 2")
    with mpmath.workprec(precision + 16):
        M = max(16, precision // 4)
        partial = mpmath.fsum(mpmath.mpf(n) ** (-s) for n in range(1, M))
        Mf = mpmath.mpf(M)
        # tail sum_{n>=M} n^-s
        tail = Mf ** (1 - s) / (s - 1) + Mf ** (-s) / 2
        rising = mpmath.mpf(s)  # (s)_(2j-1)
        for j in range(1, 200):
            if j > 1:
                rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
            b = bernoulli(2 * j)
            term = mpmath.mpf(b.numerator) / b.denominator / mpmath.factorial(2 * j) * rising * Mf ** (-s - 2 * j + 1)
            tail += term
            if abs(term) < mpmath.mpf(2) ** (-precision - 8):
                break
        return +(partial + tail)


def zeta_int_bounds(s: int, M: int = 10**5, precision: int = 128) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Bracket of zeta(s) from sum_{n<=M} plus integral tail bounds.

    The bracket is widened by a generous rounding allowance of M ulps.
    """
    if s < 2:
        raise ValueError("zeta_int_bounds needs s >= 2")
    with mpmath.workprec(precision):
        partial = mpmath.fsum(mpmath.mpf(n) ** (-s) for n in range(1, M + 1))
        slack = (M + 4) * mpmath.mpf(2) ** (2 - precision)
        lower = partial + mpmath.mpf(M + 1) ** (1 - s) / (s - 1) - slack
        upper = partial + mpmath.mpf(M) ** (1 - s) / (s - 1) + slack
        return lower, upper


@dataclass(frozen=True)
class BoundInputs:
    k: int
    m: int
    a: tuple[Fraction, ...]
    D: Discriminant
    c: float = 1.5

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "D", as_discriminant(self.D))
        if self.k < 1 or self.m < 1:
            raise ValueError("k and m must be positive")
        if len(self.a) != self.m:
            raise ValueError(f"need {self.m} principal part coefficients, got {len(self.a)}")
        if self.a[-1] == 0:
            raise ValueError("leading principal part coefficient a_m must be nonzero")
        if not self.c > 1:
            raise ValueError(f"corollary parameter c must exceed 1, got {self.c}")
        if not self.D.is_fundamental:
            raise ValueError(f"{self.D.value} is not a fundamental discriminant")

    def with_disc(self, D) -> "BoundInputs":
        return BoundInputs(self.k, self.m, self.a, D, self.c)


@dataclass(frozen=True)
class BoundReport:
    inputs: BoundInputs
    B0: mpmath.mpf
    B1: mpmath.mpf
    B2: mpmath.mpf
    B3: mpmath.mpf
    B4: mpmath.mpf
    S: mpmath.mpf
    sqrt_abs_D: mpmath.mpf
    theorem_rhs: mpmath.mpf | None
    corollary_rhs_1: mpmath.mpf
    corollary_rhs_2: mpmath.mpf
    verdict_theorem: bool
    verdict_corollary: bool
    majorants: dict = field(default_factory=dict)

    @property
    def B(self) -> mpmath.mpf:
        return self.B0 + self.B1 + self.B2 + self.B3 + self.B4

    @property
    def corollary_threshold(self) -> mpmath.mpf:
        return max(self.corollary_rhs_1, self.corollary_rhs_2)

    def to_json(self, digits: int = 20) -> dict:
        f = lambda x: None if x is None else mpmath.nstr(x, digits)
        return {
            "k": self.inputs.k,
            "m": self.inputs.m,
            "a": [str(x) for x in self.inputs.a],
            "disc": self.inputs.D.value,
            "c": repr(self.inputs.c),
            "B0": f(self.B0),
            "B1": f(self.B1),
            "B2": f(self.B2),
            "B3": f(self.B3),
            "B4": f(self.B4),
            "B": f(self.B),
            "S": f(self.S),
            "sqrt_abs_disc": f(self.sqrt_abs_D),
            "theorem_rhs": f(self.theorem_rhs),
            "corollary_rhs_1": f(self.corollary_rhs_1),
            "corollary_rhs_2": f(self.corollary_rhs_2),
            "corollary_threshold": f(self.corollary_threshold),
            "verdict_theorem": self.verdict_theorem,
            "verdict_corollary": self.verdict_corollary,
            "majorants": {k: f(v) for k, v in self.majorants.items()},
        }


def b_constants(k: int, m: int, D) -> tuple[mpmath.mpf, ...]:
    """(B0, B1, B2, B3, B4) from their defining expressions."""
    d = as_discriminant(D).value
    with mpmath.workdps(DPS):
        pi = mpmath.pi
        s3 = mpmath.sqrt(3)
        sd = mpmath.sqrt(-d)
        z = zeta_int(1 + 2 * k, mpmath.mp.prec)
        fact = mpmath.factorial(1 + 2 * k)
        shift = (1 + k / (s3 * pi)) ** k
        B0 = 2 ** (3 + 2 * k) * pi ** (2 + 2 * k) * mpmath.mpf(m) ** (1 + 2 * k) * z / fact
        B1 = 24 * pi * mpmath.sqrt(2 * pi) * mpmath.mpf(m) ** (mpmath.mpf(3) / 2 + k) * shift * mpmath.exp(4 * pi * m / s3)
        geo = mpmath.exp(-s3 * pi / 2) / (1 - mpmath.exp(-s3 * pi / 2))
        B2 = (
            2 ** (4 + 2 * k) * pi ** (2 + 2 * k) * mpmath.mpf(m) ** (1 + 2 * k) * z / fact
            * (2 * k / (s3 * pi)) ** k * mpmath.exp(-mpmath.mpf(k) / 2) * geo
        )
        mk = (m + k / (s3 * pi)) ** k
        B3 = mk * mpmath.exp(sd * pi * (m - 1))
        B4 = mk * mpmath.exp(sd * pi * m / 2)
        return B0, B1, B2, B3, B4


def b_majorants(k: int, m: int) -> dict:
    """The simplified numerical upper bounds printed for B0, B1, B2."""
    with mpmath.workdps(DPS):
        pi, s3 = mpmath.pi, mpmath.sqrt(3)
        return {
            "B0": 1064 * mpmath.mpf(m) ** (1 + 2 * k),
            "B1": 189 * mpmath.mpf(m) ** (mpmath.mpf(3) / 2 + k) * (1 + k / (s3 * pi)) ** k * mpmath.exp(4 * pi * m / s3),
            "B2": 245 * mpmath.mpf(m) ** (1 + 2 * k) * (k / (s3 * pi)) ** k,
        }


def pochhammer_sum(k: int, m: int, D) -> mpmath.mpf:
    """|sum_r C(k,r) (-2k+r)_(k-r) m^r / (2 sqrt(-D) pi)^(k-r)|, absolute value taken last."""
    d = as_discriminant(D).value
    with mpmath.workdps(DPS):
        y = 2 * mpmath.sqrt(-d) * mpmath.pi
        total = mpmath.fsum(
            comb(k, r) * pochhammer(-2 * k + r, k - r) * mpmath.mpf(m) ** r / y ** (k - r) for r in range(k + 1)
        )
        return abs(total)


def _abs_sum(a) -> mpmath.mpf:
    s = sum((abs(x) for x in a), Fraction(0))
    return mpmath.mpf(s.numerator) / s.denominator


def theorem_criterion(inp: BoundInputs) -> tuple[mpmath.mpf | None, bool]:
    """(rhs, guaranteed); rhs is None when the Pochhammer sum is numerically zero."""
    with mpmath.workdps(DPS):
        B = sum(b_constants(inp.k, inp.m, inp.D))
        S = pochhammer_sum(inp.k, inp.m, inp.D)
        if S < S_FLOOR:
            return None, False
        sd = mpmath.sqrt(-inp.D.value)
        am = abs(inp.a[-1])
        ratio = B * _abs_sum(inp.a) / ((mpmath.mpf(am.numerator) / am.denominator) * S)
        rhs = 2 / mpmath.pi * (mpmath.log(ratio) - sd * mpmath.pi * (inp.m - mpmath.mpf(1) / 2))
        return rhs, bool(sd > rhs)


def corollary_criterion(inp: BoundInputs) -> tuple[mpmath.mpf, mpmath.mpf, bool]:
    k, m, c = inp.k, inp.m, inp.c
    if not c > 1:
        raise ValueError("c must exceed 1")
    with mpmath.workdps(DPS):
        pi = mpmath.pi
        cc = mpmath.mpf(c)
        root = mpmath.root((2 * cc - 1) / cc, k)
        rhs1 = k / (m * pi * (root - 1))
        am = abs(inp.a[-1])
        ratio = _abs_sum(inp.a) / (mpmath.mpf(am.numerator) / am.denominator)
        rhs2 = 2 / pi * mpmath.log(615 * cc * mpmath.mpf(m) ** (1 + k) * (m + k / (mpmath.sqrt(3) * pi)) ** k * ratio)
        sd = mpmath.sqrt(-inp.D.value)
        return rhs1, rhs2, bool(sd > max(rhs1, rhs2))


def bound_report(inp: BoundInputs) -> BoundReport:
    with mpmath.workdps(DPS):
        Bs = b_constants(inp.k, inp.m, inp.D)
        rhs, thm = theorem_criterion(inp)
        r1, r2, cor = corollary_criterion(inp)
        return BoundReport(
            inputs=inp,
            B0=Bs[0], B1=Bs[1], B2=Bs[2], B3=Bs[3], B4=Bs[4],
            S=pochhammer_sum(inp.k, inp.m, inp.D),
            sqrt_abs_D=mpmath.sqrt(-inp.D.value),
            theorem_rhs=rhs,
            corollary_rhs_1=r1,
            corollary_rhs_2=r2,
            verdict_theorem=thm,
            verdict_corollary=cor,
            majorants=b_majorants(inp.k, inp.m),
        )


@dataclass(frozen=True)
class SweepResult:
    discriminants: list[int]
    theorem: list[bool]
    corollary: list[bool]
    theorem_crossover: int | None
    corollary_crossover: int | None

    def to_json(self) -> dict:
        return {
            "rows": [
                {"disc": d, "theorem": t, "corollary": c}
                for d, t, c in zip(self.discriminants, self.theorem, self.corollary)
            ],
            "theorem_crossover": self.theorem_crossover,
            "corollary_crossover": self.corollary_crossover,
        }


def _crossover(ds, flags):
    """Least |D| from which every scanned discriminant is guaranteed."""
    last = None
    for d, f in zip(reversed(ds), reversed(flags)):
        if not f:
            break
        last = d
    return last


def bound_sweep(inp: BoundInputs, dmax: int, dmin: int = 3) -> SweepResult:
    """Evaluate both criteria for every fundamental D with dmin <= |D| <= dmax."""
    ds, thm, cor = [], [], []
    for disc in fundamental_discriminants(-dmax, -dmin):
        case = inp.with_disc(disc)
        ds.append(disc.value)
        thm.append(theorem_criterion(case)[1])
        cor.append(corollary_criterion(case)[2])
    return SweepResult(ds, thm, cor, _crossover(ds, thm), _crossover(ds, cor))
