"""Rigorous evaluation of zeta(s), Hurwitz zeta(s, x) and Dirichlet L(s, chi_D)
at integer s >= 2, plus L(1, chi_D) through the class number formula.

The workhorse is Euler-Maclaurin with the classical remainder control: for
f(t) = (t + x)**-s all even derivatives keep one sign, so the remainder after
the B_{2M} term is bounded by the first omitted term.  Every published value
is a BigReal whose error bound adds that remainder to a blanket rounding
allowance for the mpf work.

L-series are evaluated as a finite initial sum plus per-residue
Euler-Maclaurin tails; this stays valid for the (possibly imprimitive)
Kronecker character mod |D| because only periodicity is used.  For large s a
plain truncated Dirichlet series with an integral tail bound is cheaper and
is chosen automatically.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .arith import bernoulli, kronecker
from .bigreal import BigReal, PrecisionError, working_prec, mp_prec
from .genus import Discriminant, as_discriminant

__all__ = [
    "DirichletCharacterD",
    "character",
    "pi_const",
    "zeta_int",
    "hurwitz_zeta",
    "dirichlet_L",
    "L1",
    "ZETA_MAX_S",
    "PI_MAX_DIGITS",
]

ZETA_MAX_S = 512
PI_MAX_DIGITS = 200
_EM_MAX_M = 220


class DirichletCharacterD:
    """The Kronecker character a -> (D/a), tabulated over a period mod |D|."""

    def __init__(self, disc: Discriminant):
        self.disc = disc
        q = disc.absD
        self.modulus = q
        table = [0] * q
        for a in range(1, q):
            table[a] = kronecker(disc.D, a)
        self.values = tuple(table)  # index a mod q

    def __call__(self, a: int) -> int:
        return self.values[a % self.modulus]


@lru_cache(maxsize=128)
def _character_for(D: int) -> DirichletCharacterD:
    return DirichletCharacterD(as_discriminant(D))


def character(D) -> DirichletCharacterD:
    """Cached character table for the discriminant D."""
    return _character_for(as_discriminant(D).D)


def pi_const(digits: int) -> BigReal:
    """pi with absolute error below 10**-digits (digits <= 200)."""
    if not 1 <= digits <= PI_MAX_DIGITS:
        raise ValueError(f"pi_const digits must be in [1, {PI_MAX_DIGITS}]")
    prec = working_prec(digits)
    with mp_prec(prec):
        v = +mp.pi
        err = abs(v) * mpf(2) ** (2 - prec)
    return BigReal(v, digits, err).require_certified()


def _select_em_params(s: int, digits: int) -> tuple[int, int, mpf]:
    """Pick the shift N and order M so the EM remainder clears the target.

    The remainder bound B(N, M) = |B_{2M+2}|/(2M+2)! * (s)_{2M+1} * N**(-s-2M-1)
    is evaluated at low precision; N doubles whenever no M <= cap reaches the
    target before the asymptotic series turns.
    """
    target = mpf(10) ** (-(digits + 8))
    N = max(12, int(0.8 * digits) + 6)
    with mp_prec(80):
        for _ in range(8):
            base = mpf(N)
            poch = s  # (s)_1
            pw = base ** (-s - 1)
            binv2 = 1 / (base * base)
            best = None
            for m in range(1, _EM_MAX_M + 1):
                poch *= (s + 2 * m - 1) * (s + 2 * m)  # (s)_{2m+1}
                b = bernoulli(2 * m + 2)
                rem = (
                    mpf(abs(b.numerator)) / b.denominator / math.factorial(2 * m + 2)
                ) * poch * pw * binv2
                if rem <= target:
                    return N, m, rem
                if best is not None and rem > best:
                    break  # asymptotic turn; need a larger shift
                best = rem
                pw *= binv2
            N *= 2
    raise PrecisionError(f"Euler-Maclaurin parameters not found for s={s}, digits={digits}")


def _em_tail(s: int, num: int, den: int, N: int, M: int):
    """sum_{k>=N} (k + num/den)**-s by Euler-Maclaurin, at the ambient precision.

    Returns (value, remainder_bound, abs_mass); remainder_bound is the first
    omitted correction term, a true bound because f^(2M+2) keeps one sign.
    """
    base = (mpf(N) * den + num) / den
    pw1s = base ** (1 - s)
    tail = pw1s / (s - 1) + pw1s / (2 * base)
    abs_mass = abs(tail)
    pw = pw1s / (base * base)  # base**(-s-1)
    binv2 = 1 / (base * base)
    poch = s
    for m in range(1, M + 1):
        b = bernoulli(2 * m)
        coeff = mpf(b.numerator) / b.denominator / math.factorial(2 * m)
        term = coeff * poch * pw
        tail += term
        abs_mass += abs(term)
        poch *= (s + 2 * m - 1) * (s + 2 * m)
        pw *= binv2
    b = bernoulli(2 * M + 2)
    rem = (mpf(abs(b.numerator)) / b.denominator / math.factorial(2 * M + 2)) * poch * pw
    return tail, rem, abs_mass


def hurwitz_zeta(s: int, x: Fraction, digits: int) -> BigReal:
    """zeta(s, x) = sum_{k>=0} (k + x)**-s for integer s >= 2, 0 < x <= 1.

    Arguments up to x = 2 are accepted so the shift identity
    zeta(s, x) = x**-s + zeta(s, x + 1) can be exercised directly.
    """
    if not isinstance(s, int) or not 2 <= s <= ZETA_MAX_S:
        raise ValueError(f"hurwitz_zeta needs integer s in [2, {ZETA_MAX_S}], got {s}")
    x = Fraction(x)
    if not 0 < x <= 2:
        raise ValueError(f"hurwitz_zeta needs x in (0, 2], got {x}")
    N, M, _ = _select_em_params(s, digits)
    prec = working_prec(digits)
    num, den = x.numerator, x.denominator
    with mp_prec(prec):
        direct = mpf(0)
        for k in range(N):
            direct += ((mpf(k) * den + num) / den) ** (-s)
        tail, rem, abs_mass = _em_tail(s, num, den, N, M)
        value = direct + tail
        ops = 2 * s.bit_length() + 2 * (N + 3 * M + 40)
        rnd = (direct + abs_mass) * ops * mpf(2) ** (-prec)
        err = 2 * rem + rnd
    return BigReal(value, digits, err).require_certified()


_zeta_cache: dict[tuple[int, int, str], BigReal] = {}
_zeta_lock = threading.Lock()


def _zeta_even_bernoulli(s: int, digits: int) -> BigReal:
    """zeta(2k) = |B_2k| (2 pi)^2k / (2 (2k)!), exact apart from pi."""
    two_pi = pi_const(min(digits + 8, PI_MAX_DIGITS)) * 2
    coeff = abs(bernoulli(s)) / (2 * math.factorial(s))
    return (two_pi.powi(s) * coeff).narrow(digits)


def _zeta_direct(s: int, digits: int) -> BigReal:
    """Plain Dirichlet series with the integral tail bound (large s only)."""
    N = max(2, math.ceil(10 ** ((digits + 10) / (s - 1))))
    prec = working_prec(digits)
    with mp_prec(prec):
        total = mpf(0)
        for n in range(1, N + 1):
            total += mpf(n) ** (-s)
        tail = mpf(N) ** (1 - s) / (s - 1)
        rnd = total * (2 * s.bit_length() + 2 * N + 40) * mpf(2) ** (-prec)
    return BigReal(total, digits, tail + rnd).require_certified()


def zeta_int(s: int, digits: int, method: str = "auto") -> BigReal:
    """zeta(s) for integer 2 <= s <= 512.

    method: "auto" (default), "bernoulli" (even s), "euler_maclaurin", or
    "direct" (tiny tail; only sensible for large s).
    """
    if not isinstance(s, int) or not 2 <= s <= ZETA_MAX_S:
        raise ValueError(f"zeta_int needs integer s in [2, {ZETA_MAX_S}], got {s}")
    if method == "auto":
        if math.ceil(10 ** ((digits + 10) / (s - 1))) <= 64:
            method = "direct"
        elif s % 2 == 0:
            method = "bernoulli"
        else:
            method = "euler_maclaurin"
    key = (s, digits, method)
    with _zeta_lock:
        hit = _zeta_cache.get(key)
    if hit is not None:
        return hit
    if method == "bernoulli":
        if s % 2:
            raise ValueError("the Bernoulli route needs even s")
        out = _zeta_even_bernoulli(s, digits)
    elif method == "euler_maclaurin":
        out = hurwitz_zeta(s, Fraction(1), digits)
    elif method == "direct":
        out = _zeta_direct(s, digits)
    else:
        raise ValueError(f"unknown zeta method {method!r}")
    with _zeta_lock:
        _zeta_cache[key] = out
    return out


def _L_direct(s: int, chi: DirichletCharacterD, digits: int) -> BigReal:
    N = max(2, math.ceil(10 ** ((digits + 10) / (s - 1))))
    prec = working_prec(digits)
    with mp_prec(prec):
        total = mpf(0)
        mass = mpf(0)
        for n in range(1, N + 1):
            c = chi(n)
            if c:
                t = mpf(n) ** (-s)
                total += c * t
                mass += t
        tail = mpf(N) ** (1 - s) / (s - 1)
        rnd = mass * (2 * s.bit_length() + 2 * N + 40) * mpf(2) ** (-prec)
    return BigReal(total, digits, tail + rnd).require_certified()


def dirichlet_L(s: int, chi: DirichletCharacterD, digits: int) -> BigReal:
    """L(s, chi_D) for integer s >= 2 with a certified error bound.

    Splits as sum_{n < N q} chi(n) n^-s plus q^-s times per-residue
    Euler-Maclaurin tails, paired through chi(q - a) = -chi(a).
    """
    if not isinstance(s, int) or not 2 <= s <= ZETA_MAX_S:
        raise ValueError(f"dirichlet_L needs integer s in [2, {ZETA_MAX_S}], got {s}")
    q = chi.modulus
    if math.ceil(10 ** ((digits + 10) / (s - 1))) <= max(4096, 4 * q):
        return _L_direct(s, chi, digits)
    N, M, _ = _select_em_params(s, digits)
    prec = working_prec(digits)
    with mp_prec(prec):
        total = mpf(0)
        mass = mpf(0)
        vals = chi.values
        for n in range(1, N * q):
            c = vals[n % q]
            if c:
                t = mpf(n) ** (-s)
                total += c * t
                mass += t
        qs = mpf(q) ** (-s)
        rem_total = mpf(0)
        for a in range(1, (q + 1) // 2):
            c = vals[a]
            if not c:
                continue
            ta, ra, ma = _em_tail(s, a, q, N, M)
            tb, rb, mb = _em_tail(s, q - a, q, N, M)
            total += c * qs * (ta - tb)
            mass += qs * (ma + mb)
            rem_total += qs * (ra + rb)
        ops = 2 * s.bit_length() + 2 * (N * q + 6 * M + 80)
        rnd = mass * ops * mpf(2) ** (-prec)
        err = 2 * rem_total + rnd
    return BigReal(total, digits, err).require_certified()


def L1(disc, h: int, digits: int) -> BigReal:
    """L(1, chi_D) = 2 pi h(D) / (w(D) sqrt(|D|)), h supplied by the caller."""
    disc = as_discriminant(disc)
    if h < 1:
        raise ValueError("class number must be >= 1")
    from .forms import unit_count

    w = unit_count(disc.D)
    wd = digits + 8
    pi = pi_const(min(wd, PI_MAX_DIGITS))
    root = BigReal.from_exact(disc.absD, wd).sqrt()
    return (pi * Fraction(2 * h, w) / root).narrow(digits).require_certified()
