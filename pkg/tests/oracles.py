"""Independent reference computations used by the tests.

None of these share code paths with the package routines they check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath


def iterated_raising(k: int) -> dict[tuple[int, int], Fraction]:
    """Expand R_{-2} o ... o R_{-2k} as sum_{p,j} coeff * Y^p * D^j with Y = 1/(4 pi v).

    R_l(Y^p D^j F) = Y^p D^(j+1) F + (p - l) Y^(p+1) D^j F, because
    (1/(2 pi i)) d/dtau acting on (4 pi v)^-p gives p (4 pi v)^-(p+1).
    """
    terms = {(0, 0): Fraction(1)}
    for l in range(-2 * k, 0, 2):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (p, j), c in terms.items():
            nxt[(p, j + 1)] = nxt.get((p, j + 1), 0) + c
            nxt[(p + 1, j)] = nxt.get((p + 1, j), 0) + c * (p - l)
        terms = {key: val for key, val in nxt.items() if val != 0}
    return terms


def naive_series_value(coeffs: dict[int, Fraction], r: int, tau: mpmath.mpc) -> mpmath.mpc:
    """sum n^r a_n exp(2 pi i n tau), term by term."""
    total = mpmath.mpc(0)
    for n, c in coeffs.items():
        total += mpmath.mpf(c.numerator) / c.denominator * mpmath.mpf(n) ** r * mpmath.exp(2j * mpmath.pi * n * tau)
    return total


def iterated_raising_value(coeffs: dict[int, Fraction], k: int, tau: mpmath.mpc) -> mpmath.mpc:
    y = 1 / (4 * mpmath.pi * tau.imag)
    total = mpmath.mpc(0)
    for (p, j), c in iterated_raising(k).items():
        total += mpmath.mpf(c.numerator) / c.denominator * y**p * naive_series_value(coeffs, j, tau)
    return total


def sl2_words(max_len: int):
    """All products of S, T, T^-1 of length <= max_len as (p, q, r, s)."""
    gens = [(0, -1, 1, 0), (1, 1, 0, 1), (1, -1, 0, 1)]
    seen = {(1, 0, 0, 1)}
    frontier = [(1, 0, 0, 1)]
    for _ in range(max_len):
        new = []
        for (a, b, c, d) in frontier:
            for (e, f, g, h) in gens:
                m = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
                if m not in seen:
                    seen.add(m)
                    new.append(m)
        frontier = new
    return seen


def brute_reduced_by_definition(D: int, bound: int) -> set[tuple[int, int, int]]:
    """Reduced forms of discriminant D found by scanning |a|, |b| <= bound."""
    out = set()
    for a in range(1, bound + 1):
        for b in range(-bound, bound + 1):
            num = b * b - D
            if num % (4 * a) == 0:
                c = num // (4 * a)
                if (-a < b <= a < c) or (0 <= b <= a == c):
                    out.add((a, b, c))
    return out


def poly_divides_mod_p(f: list[int], g: list[int], p: int) -> bool:
    """Long division of ascending integer polys mod p; g monic."""
    r = [x % p for x in f]
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        coef = r[i]
        if coef:
            for j, gc in enumerate(g):
                r[i - dg + j] = (r[i - dg + j] - coef * gc) % p
    return all(x == 0 for x in r[:dg])


def has_small_factor_mod_p(f: list[int], p: int, max_deg: int = 3) -> bool:
    """Does f (with leading coefficient a unit mod p) have a monic factor of degree 1..max_deg mod p?"""
    inv = pow(f[-1] % p, -1, p)
    fm = [(x * inv) % p for x in f]
    n = len(f) - 1
    for d in range(1, min(max_deg, n - 1) + 1):
        for lower in itertools.product(range(p), repeat=d):
            if poly_divides_mod_p(fm, list(lower) + [1], p):
                return True
    return False


def ramanujan_sum(c: int, n: int) -> int:
    """c_c(n) = sum_{d | gcd(c, n)} mu(c/d) d, which equals K(n, 0, c)."""
    def mu(x):
        res, p = 1, 2
        while p * p <= x:
            if x % p == 0:
                x //= p
                if x % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if x > 1 else res

    g = math.gcd(c, n)
    return sum(mu(c // d) * d for d in range(1, g + 1) if g % d == 0)
