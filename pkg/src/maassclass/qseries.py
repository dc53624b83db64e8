"""Truncated Laurent q-expansions with exact rational coefficients.

A :class:`QSeries` with valuation ``v`` and truncation order ``N`` stores the
coefficients of q^v, ..., q^N; everything from q^(N+1) on is unknown.
Arithmetic only ever reports coefficients that are determined by its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class QSeries:
    valuation: int
    coeffs: tuple[Fraction, ...]
    trunc_order: int
    weight: int = 0

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.trunc_order - self.valuation + 1:
            raise SeriesError("coefficient count does not match valuation/trunc_order")

    @classmethod
    def from_coeffs(cls, valuation: int, coeffs, trunc_order: int, weight: int = 0) -> "QSeries":
        """Normalize: strip leading zeros and drop anything past ``trunc_order``."""
        cs = [Fraction(x) for x in coeffs][: trunc_order - valuation + 1]
        cs += [Fraction(0)] * (trunc_order - valuation + 1 - len(cs))
        i = 0
        while i < len(cs) and cs[i] == 0:
            i += 1
        if i == len(cs):
            # zero series: keep a single zero coefficient at the top
            return cls(trunc_order, (Fraction(0),), trunc_order, weight)
        return cls(valuation + i, tuple(cs[i:]), trunc_order, weight)

    @classmethod
    def constant(cls, value, trunc_order: int, weight: int = 0) -> "QSeries":
        return cls.from_coeffs(0, [value], trunc_order, weight)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        if n > self.trunc_order:
            raise IndexError(f"coefficient of q^{n} is beyond truncation order {self.trunc_order}")
        if n < self.valuation:
            return Fraction(0)
        return self.coeffs[n - self.valuation]

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield self.valuation + i, c

    def truncate(self, n: int) -> "QSeries":
        if n > self.trunc_order:
            raise SeriesError(f"cannot extend truncation order {self.trunc_order} to {n}")
        return QSeries.from_coeffs(self.valuation, self.coeffs, n, self.weight)

    def scale(self, s) -> "QSeries":
        s = Fraction(s)
        return QSeries.from_coeffs(self.valuation, [s * c for c in self.coeffs], self.trunc_order, self.weight)

    def __add__(self, other: "QSeries") -> "QSeries":
        return add(self, other)

    def __neg__(self) -> "QSeries":
        return self.scale(-1)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return add(self, -other)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        return power(self, e)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return multiply(self, invert(other))
        return self.scale(1 / Fraction(other))

    def __repr__(self) -> str:
        shown = [f"{c}*q^{n}" for n, c in self.items() if c != 0][:4]
        return f"QSeries(weight={self.weight}, {' + '.join(shown) or '0'} + O(q^{self.trunc_order + 1}))"


def add(f: QSeries, g: QSeries) -> QSeries:
    if f.weight != g.weight:
        raise SeriesError(f"cannot add series of weight {f.weight} and {g.weight}")
    n = min(f.trunc_order, g.trunc_order)
    v = min(f.valuation, g.valuation)
    if v > n:
        v = n
    return QSeries.from_coeffs(v, [f[i] + g[i] for i in range(v, n + 1)], n, f.weight)


def multiply(f: QSeries, g: QSeries) -> QSeries:
    v = f.valuation + g.valuation
    n = min(f.trunc_order + g.valuation, g.trunc_order + f.valuation)
    fc, gc = f.coeffs, g.coeffs
    out = []
    for t in range(n - v + 1):
        s = Fraction(0)
        for i in range(max(0, t - len(gc) + 1), min(t, len(fc) - 1) + 1):
            s += fc[i] * gc[t - i]
        out.append(s)
    return QSeries.from_coeffs(v, out, n, f.weight + g.weight)


def invert(f: QSeries) -> QSeries:
    if f.is_zero:
        raise ZeroDivisionError("cannot invert the zero series")
    v = f.valuation
    rel = f.trunc_order - v  # relative precision
    a0 = f.coeffs[0]
    inv = [1 / a0]
    for t in range(1, rel + 1):
        s = sum((f.coeffs[j] * inv[t - j] for j in range(1, t + 1)), Fraction(0))
        inv.append(-s / a0)
    return QSeries.from_coeffs(-v, inv, -v + rel, -f.weight)


def power(f: QSeries, e: int) -> QSeries:
    if e < 0:
        return power(invert(f), -e)
    if e == 0:
        return QSeries.constant(1, f.trunc_order - f.valuation)
    result = None
    base = f
    while e:
        if e & 1:
            result = base if result is None else multiply(result, base)
        e >>= 1
        if e:
            base = multiply(base, base)
    return result


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = sum((comb(n + 1, j) * bernoulli(j) for j in range(n)), Fraction(0))
    return -s / (n + 1)


def _divisor_sums(power_: int, N: int) -> list[int]:
    sig = [0] * (N + 1)
    for d in range(1, N + 1):
        dp = d**power_
        for m in range(d, N + 1, d):
            sig[m] += dp
    return sig


def eisenstein(k: int, N: int) -> QSeries:
    """Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein weight must be even and >= 2, got {k}")
    factor = -Fraction(2 * k) / bernoulli(k)
    sig = _divisor_sums(k - 1, N)
    return QSeries.from_coeffs(0, [Fraction(1)] + [factor * sig[n] for n in range(1, N + 1)], N, k)


def _euler_product(N: int) -> list[int]:
    """Coefficients of prod (1 - q^n) up to q^N (pentagonal number theorem)."""
    c = [0] * (N + 1)
    c[0] = 1
    j = 1
    while True:
        sign = -1 if j % 2 else 1
        p1, p2 = j * (3 * j - 1) // 2, j * (3 * j + 1) // 2
        if p1 > N:
            break
        c[p1] += sign
        if p2 <= N:
            c[p2] += sign
        j += 1
    return c


def _int_power(a: list[int], e: int) -> list[int]:
    # J.C.P. Miller recurrence for f^e with f(0) = 1
    n_max = len(a) - 1
    b = [0] * (n_max + 1)
    b[0] = 1
    for n in range(1, n_max + 1):
        s = 0
        for i in range(1, n + 1):
            if a[i]:
                s += ((e + 1) * i - n) * a[i] * b[n - i]
        b[n] = s // n
    return b


def delta(N: int) -> QSeries:
    """The discriminant function q prod (1-q^n)^24, to order q^N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    body = _int_power(_euler_product(N - 1), 24)
    return QSeries.from_coeffs(1, body, N, 12)


def j_function(N: int) -> QSeries:
    """Klein's j = E4^3 / Delta, to order q^N."""
    if N < 1:
        raise ValueError("N must be at least 1")
    e4 = eisenstein(4, N + 2)
    return multiply(power(e4, 3), invert(delta(N + 2))).truncate(N)


def principal_part(f: QSeries) -> tuple[int, list[Fraction]]:
    """(m, [a_1, ..., a_m]) with f = sum a_n q^-n + O(1)."""
    if f.valuation >= 0:
        raise SeriesError("series has no pole at the cusp (holomorphic principal part)")
    m = -f.valuation
    return m, [f[-n] for n in range(1, m + 1)]
