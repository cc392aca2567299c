"""Integral positive definite binary quadratic forms.

Reduction, class enumeration, brute-force representation tests and the
value-population sieve.  This module is the exhaustive oracle layer: nothing
here is asymptotic, every answer is a finite computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import FactoredInt, factorize, is_discriminant, kronecker

__all__ = [
    "QuadForm",
    "ResourceLimitError",
    "reduce_form",
    "reduced_forms",
    "class_number",
    "unit_count",
    "represents",
    "represented_upto",
    "population_count",
    "xi_D",
    "POPULATION_SIEVE_LIMIT",
]

POPULATION_SIEVE_LIMIT = 10 ** 8


class ResourceLimitError(Exception):
    """A request exceeded a hard resource bound (sieve memory, etc.)."""


@dataclass(frozen=True)
class QuadForm:
    """The form a*X**2 + b*X*Y + c*Y**2, positive definite and integral."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"form {self.coeffs()} is not positive definite")

    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(self.a, self.b), self.c)

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def reduced(self) -> "QuadForm":
        """The reduced form properly equivalent to this one."""
        a, b, c = self.a, self.b, self.c
        while True:
            if not (-a < b <= a):
                # translate: (x, y) -> (x + r*y, y) moves b into (-a, a]
                r = (a - b) // (2 * a)
                b, c = b + 2 * r * a, a * r * r + b * r + c
            if a > c:
                a, b, c = c, -b, a  # swap: (x, y) -> (-y, x)
                continue
            break
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"


def reduce_form(form: QuadForm) -> QuadForm:
    """Gaussian reduction; preserves the discriminant, idempotent."""
    return form.reduced()


def reduced_forms(D: int) -> list[QuadForm]:
    """One reduced representative per class of primitive forms of discriminant D.

    Scans b = D (mod 2) with 3*b**2 <= |D| and splits (b**2 - D)/4 = a*c.
    Sorted by (a, b, c).
    """
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a (negative) discriminant")
    absD = -D
    out = []
    b = absD & 1
    while 3 * b * b <= absD:
        m = (b * b + absD) // 4
        for a in range(max(b, 1), math.isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
            if 0 < b < a < c:
                out.append(QuadForm(a, -b, c))
        b += 2
    return sorted(out, key=lambda f: f.coeffs())


def class_number(D: int) -> int:
    """h(D): the number of reduced primitive forms of discriminant D."""
    return len(reduced_forms(D))


def unit_count(D) -> int:
    """w(D): 6 for D = -3, 4 for D = -4, otherwise 2."""
    D = int(getattr(D, "D", D))
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a (negative) discriminant")
    if D == -3:
        return 6
    if D == -4:
        return 4
    return 2


def represents(form: QuadForm, n: int) -> bool:
    """Exhaustive test whether f(x, y) = n has an integer solution.

    Searches |y| <= sqrt(4*a*n/|D|) and, per y, the full real root window
    in x, so the search cannot miss a representation.
    """
    if n < 1:
        raise ValueError(f"represents expects n >= 1, got {n}")
    a, b = form.a, form.b
    absD = -form.discriminant
    ymax = math.isqrt(4 * a * n // absD)
    for y in range(0, ymax + 1):
        disc = 4 * a * n - absD * y * y
        if disc < 0:
            continue
        s = math.isqrt(disc)
        lo = -(s + b * y) // (2 * a) - 1
        hi = (s - b * y) // (2 * a) + 1
        for x in range(lo, hi + 1):
            if (x or y) and form(x, y) == n:
                return True
    return False


def represented_upto(form: QuadForm, limit: int) -> np.ndarray:
    """Boolean array hit[0..limit]: hit[n] iff the form represents n.

    Marks f(x, y) over the ellipse f <= limit; (x, y) and (-x, -y) agree,
    so y runs over >= 0 only with the full signed x window.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > POPULATION_SIEVE_LIMIT:
        raise ResourceLimitError(
            f"population sieve limit is {POPULATION_SIEVE_LIMIT}, got {limit}"
        )
    a, b = form.a, form.b
    absD = -form.discriminant
    hit = np.zeros(limit + 1, dtype=bool)
    # y = 0: values a*x**2, x >= 1
    xs = np.arange(1, math.isqrt(limit // a) + 1, dtype=np.int64)
    hit[a * xs * xs] = True
    ymax = math.isqrt(4 * a * limit // absD)
    for y in range(1, ymax + 1):
        disc = 4 * a * limit - absD * y * y
        if disc < 0:
            continue
        s = math.isqrt(disc)
        lo = (-b * y - s) // (2 * a) - 1
        hi = (-b * y + s) // (2 * a) + 2
        xs = np.arange(lo, hi, dtype=np.int64)
        vals = (a * xs + b * y) * xs + form.c * y * y
        vals = vals[(vals >= 1) & (vals <= limit)]
        hit[vals] = True
    return hit


def population_count(form: QuadForm, x: int) -> int:
    """B_f(x): how many distinct integers in [1, x] the form represents."""
    return int(represented_upto(form, x)[1:].sum())


def xi_D(D, n) -> int:
    """Multiplicative 0/1 indicator attached to the discriminant D.

    xi(p**e) = 1 if (D/p) = 1, 1 if (D/p) = -1 and e is even, else 0
    (in particular 0 for every p | D with e >= 1).  For n coprime to D this
    is exactly the indicator of n being represented by some primitive form
    of discriminant D.
    """
    D = int(getattr(D, "D", D))
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a (negative) discriminant")
    if not isinstance(n, FactoredInt):
        n = factorize(int(n))
    for p, e in n.factors:
        chi = kronecker(D, p)
        if chi == 1:
            continue
        if chi == -1 and e % 2 == 0:
            continue
        return 0
    return 1
