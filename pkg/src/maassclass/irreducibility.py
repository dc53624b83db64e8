"""Irreducibility certificates over Q for integer-coefficient polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import mpmath

from .classpoly import RationalPolynomial

N_PRIMES = 25
FALLBACK_MAX_DEGREE = 4


@dataclass(frozen=True)
class Verdict:
    kind: str  # "irreducible" | "reducible" | "inconclusive"
    certificate: int | str | None = None
    factor: RationalPolynomial | None = None
    primes_tried: tuple[int, ...] = field(default=())

    @property
    def is_irreducible(self) -> bool:
        return self.kind == "irreducible"

    def to_json(self) -> dict:
        return {
            "verdict": self.kind,
            "certificate": self.certificate,
            "factor": None if self.factor is None else self.factor.to_json(),
            "primes_tried": list(self.primes_tried),
        }


def integer_model(p: RationalPolynomial) -> list[int]:
    """Primitive integer multiple of p with positive leading coefficient, ascending."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


# --- arithmetic in GF(p)[x]; polynomials are ascending lists without trailing zeros

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_poly(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        coef = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        _trim(a)
    return a


def _mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mod_poly(_trim(out), f, p)


def _powmod_x(e, f, p):
    result, base = [1], _mod_poly([0, 1], f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod_poly(a, b, p)
    return a


def _derivative(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def is_squarefree_mod(f: list[int], p: int) -> bool:
    fp = _trim([c % p for c in f])
    return len(_gcd(fp, _derivative(fp, p), p)) == 1


def is_irreducible_mod(f: list[int], p: int) -> bool:
    """Distinct-degree test: gcd(x^(p^i) - x, f) = 1 for all i <= deg/2.

    Assumes p does not divide the leading coefficient and f is squarefree mod p.
    """
    fp = _trim([c % p for c in f])
    n = len(fp) - 1
    h = _mod_poly([0, 1], fp, p)
    for _ in range(1, n // 2 + 1):
        # h <- h^p mod f, so h = x^(p^i)
        h = _powmod_pow(h, p, fp, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_gcd(fp, _trim(diff), p)) > 1:
            return False
    return True


def _powmod_pow(a, e, f, p):
    result, base = [1], a
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def _primes():
    n = 2
    while True:
        if all(n % q for q in range(2, math.isqrt(n) + 1)):
            yield n
        n += 1


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _exact_divides(f: list[int], g: list[int]) -> bool:
    _, r = RationalPolynomial(tuple(f)).divmod(RationalPolynomial(tuple(g)))
    return r.is_zero


def _numeric_roots(f: list[int]):
    # Mignotte-scale working precision so rounded factor coefficients are trustworthy
    size = max(abs(c) for c in f)
    dps = 30 + len(str(size)) * 2 + 5 * len(f)
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f)], maxsteps=400, extraprec=4 * dps)
    return roots, dps


def _factor_from_roots(subset, lead_div: int, dps: int) -> list[int] | None:
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(lead_div)]
        for r in subset:
            nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= c * r
            coeffs = nxt
        out = []
        for c in coeffs:
            nearest = mpmath.nint(c.real)
            if abs(c - nearest) > mpmath.mpf(10) ** (-dps // 3):
                return None
            out.append(int(nearest))
        return out


def _rational_root(f: list[int]) -> Fraction | None:
    lead, const = f[-1], f[0]
    if const == 0:
        return Fraction(0)
    if abs(const) <= 10**12 and abs(lead) <= 10**12:
        for q in _divisors(lead):
            for p in _divisors(const):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if RationalPolynomial(tuple(f))(cand) == 0:
                        return cand
        return None
    roots, _ = _numeric_roots(f)
    lead_divs = _divisors(lead) if abs(lead) <= 10**12 else [1]
    for r in sorted(roots, key=lambda z: (abs(z), z.real < 0)):
        if abs(r.imag) > 1e-6 * (1 + abs(r)):
            continue
        for q in lead_divs:
            cand = Fraction(int(mpmath.nint(r.real * q)), q)
            if RationalPolynomial(tuple(f))(cand) == 0:
                return cand
    return None


def _subset_search(f: list[int]) -> list[int] | None:
    """Find an integer factor of degree <= deg/2 by grouping numerical roots.

    Every candidate is confirmed by exact division.
    """
    n = len(f) - 1
    roots, dps = _numeric_roots(f)
    lead_divs = _divisors(f[-1]) if abs(f[-1]) <= 10**12 else [1]
    for size in range(1, n // 2 + 1):
        for subset in combinations(range(n), size):
            for ld in lead_divs:
                g = _factor_from_roots([roots[i] for i in subset], ld, dps)
                if g is not None and _exact_divides(f, g):
                    return g
    return None


def irreducible_over_q(p: RationalPolynomial, n_primes: int = N_PRIMES) -> Verdict:
    f = integer_model(p)
    n = len(f) - 1
    if n == 0:
        raise ValueError("constant polynomial has no irreducibility verdict")
    if n == 1:
        return Verdict("irreducible", "degree 1")
    root = _rational_root(f)
    if root is not None:
        return Verdict("reducible", "rational root", RationalPolynomial((-root, 1)))
    tried = []
    primes = _primes()
    while len(tried) < n_primes:
        q = next(primes)
        if f[-1] % q == 0 or not is_squarefree_mod(f, q):
            continue
        tried.append(q)
        if is_irreducible_mod(f, q):
            return Verdict("irreducible", q, primes_tried=tuple(tried))
    if n <= FALLBACK_MAX_DEGREE:
        g = _subset_search(f)
        if g is None:
            return Verdict("irreducible", "root-subset search", primes_tried=tuple(tried))
        return Verdict("reducible", "factor", RationalPolynomial(tuple(g)), tuple(tried))
    return Verdict("inconclusive", None, primes_tried=tuple(tried))


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ValueError("squarefree part of 0 is undefined")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    # after removing primes up to n^(1/3), the cofactor has at most two prime factors
    while p * p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1
    r = math.isqrt(n)
    if r * r != n:
        out *= n
    return sign * out


def quadratic_splitting_field(p: RationalPolynomial) -> int:
    """d such that the roots of the irreducible quadratic p generate Q(sqrt(d))."""
    if p.degree != 2:
        raise ValueError(f"expected a quadratic, got degree {p.degree}")
    c, b, a = integer_model(p)
    disc = b * b - 4 * a * c
    d = squarefree_part(disc)
    if d == 1:
        raise ValueError("polynomial is reducible over Q")
    return d
