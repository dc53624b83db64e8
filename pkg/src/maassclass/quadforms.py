"""Positive definite binary quadratic forms of negative discriminant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath


class InvalidDiscriminant(ValueError):
    pass


def _squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True, order=True)
class Discriminant:
    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise InvalidDiscriminant(f"discriminant must be an integer, got {self.value!r}")
        if self.value >= 0 or self.value % 4 not in (0, 1):
            raise InvalidDiscriminant(
                f"{self.value} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)"
            )

    @property
    def is_fundamental(self) -> bool:
        d = self.value
        if d % 4 == 1:
            return _squarefree(d)
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)

    def __int__(self) -> int:
        return self.value


def as_discriminant(d: int | Discriminant) -> Discriminant:
    return d if isinstance(d, Discriminant) else Discriminant(int(d))


def is_discriminant(d: int) -> bool:
    return d < 0 and d % 4 in (0, 1)


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return self.is_positive_definite and ((-a < b <= a < c) or (0 <= b <= a == c))

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, p: int, q: int, r: int, s: int) -> "QuadForm":
        """Substitute (x, y) -> (p*x + q*y, r*x + s*y)."""
        a, b, c = self.a, self.b, self.c
        return QuadForm(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def reduce(q: QuadForm) -> QuadForm:
    """Return the reduced form in the SL2(Z)-class of ``q``."""
    if not q.is_positive_definite:
        raise ValueError(f"{q} is not positive definite")
    a, b, c = q.a, q.b, q.c
    while True:
        # translate b into (-a, a]
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def enumerate_reduced(D: int | Discriminant) -> list[QuadForm]:
    """All reduced forms of discriminant D, sorted by (a, b, c)."""
    d = as_discriminant(D).value
    forms = []
    amax = math.isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(QuadForm(a, b, c))
    return forms


def primitive_subset(forms) -> list[QuadForm]:
    return [f for f in forms if f.is_primitive]


def class_number(D: int | Discriminant) -> int:
    return len(primitive_subset(enumerate_reduced(D)))


def primitive_reduced(D: int | Discriminant) -> list[QuadForm]:
    return primitive_subset(enumerate_reduced(D))


@dataclass(frozen=True)
class CMPoint:
    re: mpmath.mpf
    im: mpmath.mpf
    source_form: QuadForm
    # built under the working precision of cm_point; mpc() would round to mp.prec
    tau: mpmath.mpc = field(compare=False, repr=False, default=None)


def cm_point(q: QuadForm, precision: int = 192) -> CMPoint:
    """The root of q(tau, 1) = 0 in the upper half plane."""
    if not q.is_positive_definite:
        raise ValueError(f"{q} is not positive definite")
    with mpmath.workprec(precision):
        two_a = mpmath.mpf(2 * q.a)
        re = mpmath.mpf(-q.b) / two_a
        im = mpmath.sqrt(-q.discriminant) / two_a
        tau = mpmath.mpc(re, im)
    return CMPoint(re, im, q, tau)


def divisor_decomposition(D: int | Discriminant) -> list[tuple[int, Discriminant]]:
    """Pairs (a, D/a^2) with a^2 | D and D/a^2 again a discriminant."""
    d = as_discriminant(D).value
    out = []
    a = 1
    while a * a <= -d:
        if d % (a * a) == 0 and is_discriminant(d // (a * a)):
            out.append((a, Discriminant(d // (a * a))))
        a += 1
    return out


def fundamental_discriminants(dmin: int, dmax: int = -3) -> list[Discriminant]:
    """Fundamental discriminants D with dmin <= D <= dmax, in decreasing order."""
    out = []
    for d in range(dmax, dmin - 1, -1):
        if is_discriminant(d):
            disc = Discriminant(d)
            if disc.is_fundamental:
                out.append(disc)
    return out
