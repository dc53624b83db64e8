"""Numerical evaluation of q-series and of iterated Maass raising.

The raising operator on weight l is R_l = D - l/(4 pi v) with D = q d/dq and
v = Im(tau). Applying R_{-2} o ... o R_{-2k} to a weight -2k form F gives

    P_F(tau) = sum_{r=0}^{k} (-1)^(k-r) C(k,r) (-2k+r)_(k-r) (4 pi v)^(r-k) D^r F(tau)

where (a)_n is the rising factorial.

All functions are pure. mpmath's working precision is process-wide, so
threads calling into this module should run while the caller holds the same
precision (see ``_parallel.pooled_map``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import mpmath

from .qseries import QSeries, eisenstein

SQRT3_HALF = 0.8660254037844386


@dataclass(frozen=True)
class EvalConfig:
    precision: int = 192
    trunc_order: int = 128
    tail_tol: float = 1e-20

    def __post_init__(self) -> None:
        if self.precision < 64:
            raise ValueError("precision must be at least 64 bits")
        if self.tail_tol <= 0:
            raise ValueError("tail_tol must be positive")
        if self.trunc_order < 1:
            raise ValueError("trunc_order must be positive")

    def with_(self, **kw) -> "EvalConfig":
        d = {"precision": self.precision, "trunc_order": self.trunc_order, "tail_tol": self.tail_tol}
        d.update(kw)
        return EvalConfig(**d)


@dataclass(frozen=True)
class RaisedValue:
    value: mpmath.mpc
    err_estimate: mpmath.mpf
    k: int
    at: mpmath.mpc


def _tau(tau) -> mpmath.mpc:
    t = mpmath.mpc(tau)
    if t.imag <= 0:
        raise ValueError(f"tau must lie in the upper half plane, got Im(tau) = {mpmath.nstr(t.imag, 8)}")
    return t


def to_fundamental_domain(tau) -> mpmath.mpc:
    """Move tau into |Re| <= 1/2, |tau| >= 1 by translations and inversions."""
    t = _tau(tau)
    for _ in range(10_000):
        t = t - mpmath.nint(t.real)
        if abs(t) < 1:
            t = -1 / t
        else:
            return t
    raise RuntimeError("fundamental domain reduction did not terminate")


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for i in range(n):
        out = out * (a + i)
    return out


def raising_weights(k: int) -> list[int]:
    """Integer weights w_r with P_F = sum_r w_r (4 pi v)^(r-k) D^r F."""
    return [(-1) ** (k - r) * comb(k, r) * pochhammer(-2 * k + r, k - r) for r in range(k + 1)]


def _terms(f: QSeries, cfg: EvalConfig):
    n_max = min(f.trunc_order, cfg.trunc_order)
    return [(n, c) for n, c in f.items() if n <= n_max and c != 0]


def _deriv_values(f: QSeries, r_max: int, tau: mpmath.mpc, cfg: EvalConfig) -> list[mpmath.mpc]:
    """[D^0 f, ..., D^r_max f] at tau, summed from the top exponent down."""
    q = mpmath.exp(2j * mpmath.pi * tau)
    terms = _terms(f, cfg)
    sums = [mpmath.mpc(0)] * (r_max + 1)
    if not terms:
        return sums
    # Horner in q over the dense exponent range valuation..n_max
    v0 = terms[0][0]
    dense = {n: c for n, c in terms}
    for n in range(terms[-1][0], v0 - 1, -1):
        c = dense.get(n)
        for r in range(r_max + 1):
            sums[r] = sums[r] * q
            if c is not None:
                sums[r] += mpmath.mpf(c.numerator) / c.denominator * (n**r)
    qv = q**v0
    return [s * qv for s in sums]


def eval_qseries(f: QSeries, tau, cfg: EvalConfig = EvalConfig()) -> mpmath.mpc:
    with mpmath.workprec(cfg.precision):
        return +_deriv_values(f, 0, _tau(tau), cfg)[0]


def eval_deriv_series(f: QSeries, r: int, tau, cfg: EvalConfig = EvalConfig()) -> mpmath.mpc:
    """Value of D^r f = sum n^r a_n q^n."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    with mpmath.workprec(cfg.precision):
        return +_deriv_values(f, r, _tau(tau), cfg)[r]


def _raise_at(F: QSeries, k: int, tau: mpmath.mpc, cfg: EvalConfig) -> mpmath.mpc:
    ds = _deriv_values(F, k, tau, cfg)
    y = 4 * mpmath.pi * tau.imag
    total = mpmath.mpc(0)
    for r, w in enumerate(raising_weights(k)):
        if w:
            total += w * ds[r] / y ** (k - r)
    return total


def tail_estimate(F: QSeries, k: int, v, cfg: EvalConfig) -> mpmath.mpf:
    """Heuristic size of the dropped q-tail of P_F at imaginary part v.

    Coefficient growth is modelled as exp(4 pi sqrt(m n)) with m the pole order.
    """
    m = max(1, -F.valuation)
    n0 = min(F.trunc_order, cfg.trunc_order) + 1
    y = 4 * mpmath.pi * v
    weights = raising_weights(k)
    total = mpmath.mpf(0)
    for n in range(n0, n0 + 200):
        growth = mpmath.exp(4 * mpmath.pi * mpmath.sqrt(m * n) - 2 * mpmath.pi * n * v)
        factor = sum(abs(w) * mpmath.mpf(n) ** r / y ** (k - r) for r, w in enumerate(weights))
        term = growth * factor
        total += term
        if term < total * mpmath.mpf(2) ** (-cfg.precision):
            break
    return total


def required_trunc_order(m: int, tail_tol: float, v_min: float = SQRT3_HALF) -> int:
    """Smallest N with exp(4 pi sqrt(m N)) exp(-2 pi N v_min) < tail_tol."""
    target = mpmath.log(tail_tol)
    n = 1
    while 4 * mpmath.pi * mpmath.sqrt(m * n) - 2 * mpmath.pi * n * v_min >= target or n < 8 * m:
        n += 1
    return n


def raise_value(
    F: QSeries, k: int, tau, cfg: EvalConfig = EvalConfig(), reduce_point: bool = True
) -> RaisedValue:
    """P_F(tau) for F of weight -2k.

    P_F has weight 0, so tau is first moved into the fundamental domain
    unless ``reduce_point`` is false.
    """
    if k < 0:
        raise ValueError("raising depth k must be nonnegative")
    if F.weight != -2 * k:
        raise ValueError(f"F has weight {F.weight}, but raising depth k={k} needs weight {-2 * k}")
    with mpmath.workprec(cfg.precision):
        t = to_fundamental_domain(tau) if reduce_point else _tau(tau)
        value = _raise_at(F, k, t, cfg)
        err = tail_estimate(F, k, t.imag, cfg)
        return RaisedValue(+value, err, k, t)


def eval_e2star(tau, cfg: EvalConfig = EvalConfig()) -> mpmath.mpc:
    """E2*(tau) = E2(tau) - 3/(pi v)."""
    with mpmath.workprec(cfg.precision):
        t = _tau(tau)
        e2 = eisenstein(2, cfg.trunc_order)
        return _deriv_values(e2, 0, t, cfg)[0] - 3 / (mpmath.pi * t.imag)


def modularity_residual(F: QSeries, k: int, tau, cfg: EvalConfig = EvalConfig()) -> mpmath.mpf:
    """|P(tau) - P(-1/tau)| + |P(tau) - P(tau+1)|, evaluated without point reduction.

    The weight of F is deliberately not checked against k, so a mismatched
    depth shows up as a large residual.
    """
    with mpmath.workprec(cfg.precision):
        t = _tau(tau)
        p0 = _raise_at(F, k, t, cfg)
        ps = _raise_at(F, k, -1 / t, cfg)
        pt = _raise_at(F, k, t + 1, cfg)
        return abs(p0 - ps) + abs(p0 - pt)
