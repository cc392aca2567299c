"""Genus-theoretic counting for negative discriminants.

t(D) (so 2**t(D) is the number of genera), the genus-representation count
g(n, D), and the exact rational v(D) = sum over n | D^infinity of g(n, D)/n,
computed both by the closed formula and by a rigorously bracketed truncated
series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .arith import FactoredInt, factorize, discriminant_decompose, is_discriminant, kronecker

__all__ = [
    "Discriminant",
    "as_discriminant",
    "t_of_D",
    "g_count",
    "v_closed",
    "v_series",
    "VBracket",
]


def _t_from(D: int, omega: int) -> int:
    """The exponent t(D) with 2**t(D) genera, by the D mod 32 / mod 16 split."""
    if D % 32 == 0:
        t = omega
    elif D % 16 == 4:
        t = omega - 2
    else:
        t = omega - 1
    assert t >= 0, f"negative t for discriminant {D}"
    return t


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant with its conductor decomposition D = f**2 * d0."""

    D: int
    f: int
    d0: int
    factors: FactoredInt  # of |D|
    omega: int
    t: int
    phi_absD: int

    @classmethod
    def from_int(cls, D: int) -> "Discriminant":
        if not is_discriminant(D):
            raise ValueError(f"{D} is not a (negative) discriminant")
        f, d0 = discriminant_decompose(D)
        fac = factorize(-D)
        return cls(D, f, d0, fac, fac.omega, _t_from(D, fac.omega), fac.phi)

    @property
    def is_fundamental(self) -> bool:
        return self.f == 1

    @property
    def absD(self) -> int:
        return -self.D

    def __str__(self) -> str:
        return str(self.D)


@lru_cache(maxsize=8192)
def _disc_from_int(D: int) -> Discriminant:
    return Discriminant.from_int(D)


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else _disc_from_int(int(D))


def t_of_D(D) -> int:
    """t(D) >= 0 with exactly 2**t(D) genera of discriminant D."""
    return as_discriminant(D).t


def g_count(n, D) -> int:
    """g(n, D): number of genera of discriminant D representing n.

    Zero when gcd(n, f**2) is not a square or some prime with odd exponent
    in n is inert for the fundamental part; otherwise
    2**(t(D) - t(D / gcd(n, f**2))).
    """
    disc = as_discriminant(D)
    if not isinstance(n, FactoredInt):
        n = factorize(int(n))
    if n.value < 1:
        raise ValueError("g_count expects n >= 1")
    g = math.gcd(n.value, disc.f * disc.f)
    m = math.isqrt(g)
    if m * m != g:
        return 0
    for p, e in n.factors:
        if e % 2 and kronecker(disc.d0, p) == -1:
            return 0
    inner = as_discriminant(disc.D // g)
    return 1 << (disc.t - inner.t)


def v_closed(D) -> Fraction:
    """v(D) as an exact rational via the conductor-sum closed formula.

    v(D) = |D|/phi(|D|) * prod over p | D inert for d0 of 1/(1 + 1/p)
           * sum over m | f of 2**(t(D) - t(D/m**2)) / m**2
             * prod over p | f/m of (1 - 1/p)
             * prod over p | f/m inert for d0 of (1 + 1/p).
    Equals |D|/phi(|D|) when D is fundamental.
    """
    disc = as_discriminant(D)
    pref = Fraction(disc.absD, disc.phi_absD)
    for p, _ in disc.factors.factors:
        if kronecker(disc.d0, p) == -1:
            pref *= Fraction(p, p + 1)
    total = Fraction(0)
    for m in factorize(disc.f).divisors():
        inner = as_discriminant(disc.D // (m * m))
        term = Fraction(1 << (disc.t - inner.t), m * m)
        cof = disc.f // m
        for p, _ in factorize(cof).factors:
            term *= Fraction(p - 1, p)
            if kronecker(disc.d0, p) == -1:
                term *= Fraction(p + 1, p)
        total += term
    return pref * total


class VBracket(NamedTuple):
    """A rigorous bracket: lower <= v(D) <= lower + tail_bound."""

    lower: Fraction
    tail_bound: Fraction


def v_series(D, bound: int) -> VBracket:
    """Truncation of v(D) = sum_{n | D^inf} g(n, D)/n over n <= bound.

    The tail estimate uses g <= 2**t(D) and the exact geometric mass of the
    |D|-smooth integers above the bound, so the bracket is rigorous.
    """
    disc = as_discriminant(D)
    if bound < disc.absD:
        raise ValueError(f"bound {bound} is below |D| = {disc.absD}")
    primes = [p for p, _ in disc.factors.factors]

    smooth: list[tuple[int, tuple[int, ...]]] = []

    def walk(i: int, val: int, exps: tuple[int, ...]) -> None:
        if i == len(primes):
            smooth.append((val, exps))
            return
        e = 0
        v = val
        while v <= bound:
            walk(i + 1, v, exps + (e,))
            e += 1
            v *= primes[i]

    walk(0, 1, ())

    lower = Fraction(0)
    partial_inv = Fraction(0)  # sum of 1/n over enumerated smooth n
    for val, exps in smooth:
        fac = FactoredInt(val, tuple((p, e) for p, e in zip(primes, exps) if e))
        lower += Fraction(g_count(fac, disc), val)
        partial_inv += Fraction(1, val)
    full_inv = Fraction(1)
    for p in primes:
        full_inv *= Fraction(p, p - 1)
    tail = (full_inv - partial_inv) * (1 << disc.t)
    assert tail >= 0
    return VBracket(lower, tail)
