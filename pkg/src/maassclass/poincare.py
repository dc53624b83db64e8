"""Fourier coefficients of level-1 Maass-Poincare series of weight -2k.

Coefficients are normalized so that for a weight -2k form F with principal
part sum a_n q^-n, the q^l coefficient of F equals
sum_n a_n * poincare_coefficient(n, k, l).partial_value (up to truncation
of the c-sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ._parallel import pooled_map
from .bounds import zeta_int

DEFAULT_CMAX = 2000
ZETA_PREC = 64


@dataclass(frozen=True)
class CoeffEstimate:
    n: int
    k: int
    l: int
    c_max: int
    partial_value: float
    bound_value: float

    @property
    def ratio(self) -> float:
        return abs(self.partial_value) / self.bound_value

    @property
    def passes(self) -> bool:
        return abs(self.partial_value) <= self.bound_value

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "c_max": self.c_max,
            "partial": f"{self.partial_value:.12e}",
            "bound": f"{self.bound_value:.12e}",
            "ratio": f"{self.ratio:.6e}",
            "pass": self.passes,
        }


def _units_and_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    if c == 1:
        return np.array([0], dtype=np.int64), np.array([0], dtype=np.int64)
    r = np.arange(c, dtype=np.int64)
    d = r[np.gcd(r, c) == 1]
    # d^(phi(c) - 1) mod c by square and multiply; c < 2^31 keeps products in int64
    e = len(d) - 1
    inv = np.ones_like(d)
    base = d.copy()
    while e:
        if e & 1:
            inv = inv * base % c
        base = base * base % c
        e >>= 1
    return d, inv


def _kloosterman_parts(m, l, c: int):
    """Real and imaginary parts of K(m, l, c); m and l may be equal-length arrays."""
    d, inv = _units_and_inverses(c)
    m = np.atleast_1d(np.asarray(m, dtype=np.int64))[:, None]
    l = np.atleast_1d(np.asarray(l, dtype=np.int64))[:, None]
    phase = ((m * inv[None, :] + l * d[None, :]) % c).astype(np.float64) * (2 * math.pi / c)
    return np.cos(phase).sum(axis=1), np.sin(phase).sum(axis=1)


def kloosterman_table(pairs, c_max: int) -> np.ndarray:
    """Array T with T[i, c-1] = K(m_i, l_i, c) for (m_i, l_i) in pairs and 1 <= c <= c_max."""
    ms = np.array([p[0] for p in pairs], dtype=np.int64)
    ls = np.array([p[1] for p in pairs], dtype=np.int64)
    out = np.empty((len(pairs), c_max))
    for c in range(1, c_max + 1):
        re, im = _kloosterman_parts(ms, ls, c)
        if np.any(np.abs(im) >= 1e-15 * c + 1e-12):
            raise ArithmeticError(f"Kloosterman sum with modulus {c} has a nonzero imaginary part")
        out[:, c - 1] = re
    return out


def kloosterman(m: int, l: int, c: int) -> float:
    """K(m, l, c) = sum over units d mod c of exp(2 pi i (m d^-1 + l d) / c)."""
    if c < 1:
        raise ValueError("modulus c must be positive")
    re, im = _kloosterman_parts(m, l, c)
    if abs(im[0]) >= 1e-15 * c + 1e-12:
        raise ArithmeticError(f"Kloosterman sum K({m},{l},{c}) has imaginary part {im[0]:g}")
    return float(re[0])


def kloosterman_mp(m: int, l: int, c: int, precision: int = 128) -> mpmath.mpc:
    """High precision complex value of K(m, l, c), without the realness assertion."""
    with mpmath.workprec(precision):
        total = mpmath.mpc(0)
        for d in range(c):
            if math.gcd(d, c) != 1:
                continue
            dbar = pow(d, -1, c) if c > 1 else 0
            total += mpmath.expjpi(mpmath.mpf(2 * ((m * dbar + l * d) % c)) / c)
        return total


def bessel_i(nu: int, x, precision: int = 53) -> mpmath.mpf:
    """I_nu(x) from its power series sum (x/2)^(nu+2t) / (t! (t+nu)!)."""
    if nu < 0:
        raise ValueError("nu must be a nonnegative integer")
    if x < 0:
        raise ValueError("x must be nonnegative")
    with mpmath.workprec(precision + 10):
        h = mpmath.mpf(x) / 2
        if h == 0:
            return mpmath.mpf(1 if nu == 0 else 0)
        term = h**nu / mpmath.factorial(nu)
        total = term
        eps = mpmath.mpf(2) ** (-precision)
        t = 0
        while True:
            t += 1
            term = term * h * h / (t * (t + nu))
            total += term
            if term < eps * total and t > h:
                break
        return +total


def bessel_i_array(nu: int, x: np.ndarray) -> np.ndarray:
    """Vectorized float64 version of :func:`bessel_i`."""
    h = np.asarray(x, dtype=np.float64) / 2
    term = h**nu / math.factorial(nu)
    total = term.copy()
    t = 0
    hmax = float(h.max()) if h.size else 0.0
    while True:
        t += 1
        term = term * h * h / (t * (t + nu))
        total += term
        if t > hmax and np.all(term <= 1e-18 * total):
            break
    return total


def poincare_coefficient(
    n: int, k: int, l: int, c_max: int = DEFAULT_CMAX, precision: int = 53, kloosterman_values=None
) -> CoeffEstimate:
    """Partial c-sum (c <= c_max) of the q^l coefficient of the weight -2k Poincare series with pole q^-n.

    ``kloosterman_values`` may supply K(-n, l, c) for c = 1..c_max.
    """
    if l < 0:
        raise ValueError("only l >= 0 is supported")
    if k < 1:
        raise ValueError("raising depth k must be at least 1")
    if n < 1 or c_max < 1:
        raise ValueError("n and c_max must be positive")
    cs = np.arange(1, c_max + 1, dtype=np.float64)
    K = kloosterman_table([(-n, l)], c_max)[0] if kloosterman_values is None else np.asarray(kloosterman_values)
    sign = (-1) ** (k + 1)  # i^(2+2k), also the sign of (2 pi i)^(2+2k) / (2 pi)^(2+2k)
    if l > 0:
        x = 4 * math.pi * math.sqrt(n * l) / cs
        s = float(np.sum(K / cs * bessel_i_array(1 + 2 * k, x)))
        value = -2 * math.pi * sign * l ** (-(2 * k + 1) / 2) * n ** ((2 * k + 1) / 2) * s
    else:
        s = float(np.sum(K / cs ** (2 + 2 * k)))
        value = -sign * (2 * math.pi) ** (2 + 2 * k) * n ** (1 + 2 * k) * s / math.factorial(1 + 2 * k)
    return CoeffEstimate(n, k, l, c_max, value, lemma_bound(n, k, l))


def lemma_bound(n: int, k: int, l: int) -> float:
    """Upper bound for |poincare_coefficient(n, k, l)| in the same normalization."""
    z = float(zeta_int(1 + 2 * k, ZETA_PREC))
    fact = math.factorial(1 + 2 * k)
    if l == 0:
        return (2 * math.pi) ** (2 + 2 * k) * n ** (1 + 2 * k) * z / fact
    main = 4 * math.sqrt(2) * math.pi**1.5 * fact * l ** (-k) * n ** (1 + k) * math.exp(4 * math.pi * math.sqrt(n * l))
    rest = 2 ** (3 + 2 * k) * math.pi ** (2 + 2 * k) * n ** (1 + 2 * k) * z
    return (main + rest) / fact


def verification_table(
    n_max: int = 3, k_max: int = 2, l_max: int = 10, c_max: int = DEFAULT_CMAX, threads: int | None = None
) -> list[CoeffEstimate]:
    """Coefficient estimates for all 1 <= n <= n_max, 1 <= k <= k_max, 0 <= l <= l_max."""
    if k_max < 1:
        raise ValueError("k must be at least 1")
    cases = [(n, k, l) for n in range(1, n_max + 1) for k in range(1, k_max + 1) for l in range(l_max + 1)]
    pairs = sorted({(-n, l) for n, _, l in cases})
    table = dict(zip(pairs, kloosterman_table(pairs, c_max)))
    run = lambda case: poincare_coefficient(*case, c_max=c_max, kloosterman_values=table[(-case[0], case[2])])
    return pooled_map(run, cases, threads, ZETA_PREC)


def principal_part_coefficient(a, k: int, l: int, c_max: int = DEFAULT_CMAX) -> float:
    """q^l coefficient of the form with principal part sum a[n-1] q^-n, from Poincare series."""
    pairs = [(-n, l) for n in range(1, len(a) + 1)]
    table = kloosterman_table(pairs, c_max)
    return sum(
        float(an) * poincare_coefficient(n, k, l, c_max, kloosterman_values=table[n - 1]).partial_value
        for n, an in enumerate(a, 1)
        if an
    )
