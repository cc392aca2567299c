"""The headline constants of the library.

For a negative discriminant D this module computes, to a requested number of
certified decimals:

* ``euler_minus_product``: T(D) = prod over primes with (D/p) = -1 of
  (1 - p**-2)**-1, accelerated through the zeta/L identity
  T = prod_{n>=1} ( zeta(2**n)/L(2**n, chi_D) * prod_{q | D} (1 - q**-2**n) )**(1/2**n),
  whose factors approach 1 doubly exponentially fast;
* ``erdos_number``: E(D) = v(D)/2**(t+1) * sqrt(L(1,chi_D) phi(|D|)/pi * T(D)),
  the normalized distance-count density of the covolume-1 lattice attached
  to the forms of discriminant D;
* ``bernays_C``: C(D) = 2 E(D)/sqrt(|D|), the x/sqrt(log x) coefficient of a
  single form's value-population count;
* ``james_J``: the coprime-to-D variant J(D);
* ``pall_P``: Pall's any-n variant P(D) (experimental off the fundamental
  case, see the docstring);
* ``shanks_schmid_table``: C(X**2 + n Y**2) = C(-4n) for the 21 classical n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import mp, mpf

from .arith import kronecker, small_primes
from .bigreal import BigReal, PrecisionError, working_prec, mp_prec
from .forms import class_number, unit_count
from .genus import Discriminant, as_discriminant, v_closed
from .lfun import L1, ZETA_MAX_S, character, dirichlet_L, pi_const, zeta_int, PI_MAX_DIGITS

__all__ = [
    "ConstantReport",
    "euler_minus_product",
    "euler_minus_product_direct",
    "erdos_number",
    "bernays_C",
    "james_J",
    "pall_P",
    "shanks_schmid_table",
    "SHANKS_SCHMID_NS",
    "MIN_RECURSION_DEPTH",
]

SHANKS_SCHMID_NS = (
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 20, 24, 27, 64, 96, 256,
)

MIN_RECURSION_DEPTH = 5


@dataclass(frozen=True)
class ConstantReport:
    """A computed constant plus the arithmetic inputs that went into it."""

    disc: Discriminant
    value: BigReal
    kind: str  # "erdos" | "bernays" | "james" | "pall"
    terms_used: int
    inputs: dict


@lru_cache(maxsize=512)
def _minus_product_with_depth(disc: Discriminant, digits: int) -> tuple[BigReal, int]:
    chi = character(disc)
    omega = disc.omega
    acc = BigReal.from_exact(0, digits)
    prec = working_prec(digits)
    n = 0
    while True:
        n += 1
        s = 1 << n
        if s > ZETA_MAX_S:
            raise PrecisionError(f"recursion depth {n} exceeds the zeta cap")
        factor = zeta_int(s, digits) / dirichlet_L(s, chi, digits)
        ram = Fraction(1)
        for p, _ in disc.factors.factors:
            ram *= 1 - Fraction(1, p ** s)
        if ram != 1:
            factor = factor * ram
        acc = acc + factor.log() * Fraction(1, s)
        # Coarse but rigorous: |log factor_m| <= (5 + 1.2 omega) * 2**-2**m
        # for m >= 2, so the omitted weighted tail is below twice its first
        # term.  Stop once that clears the publication target with room.
        with mp_prec(prec):
            tail = 2 * (5 + 1.2 * omega) * mpf(2) ** (-(2 << n)) / (2 << n)
            done = n >= MIN_RECURSION_DEPTH and tail < mpf(10) ** (-(digits + 8))
        if done:
            break
    total = acc.widen(tail)
    return total.exp(), n


def euler_minus_product(D, digits: int) -> BigReal:
    """T(D) = prod_{(D/p) = -1} (1 - p**-2)**-1 with a certified bound."""
    disc = as_discriminant(D)
    value, _ = _minus_product_with_depth(disc, digits + 6)
    return value.narrow(digits).require_certified()


_prime_array: np.ndarray | None = None


def _primes_np() -> np.ndarray:
    global _prime_array
    if _prime_array is None:
        _prime_array = np.array(small_primes(), dtype=np.int64)
    return _prime_array


def euler_minus_product_direct(D, prime_limit: int = 10 ** 6) -> tuple[float, float]:
    """Truncated prime-by-prime product for T(D): the slow, independent route.

    Returns (value, log_tail) with the guarantee
    value <= T(D) <= value * exp(log_tail); log_tail folds the proven
    over-limit mass sum_{p > P} (p**-2 + p**-4) < 1/P + 1/(3 P**3) together
    with a generous float64 rounding allowance.
    """
    disc = as_discriminant(D)
    primes = _primes_np()
    primes = primes[primes < prime_limit]
    chi_table = np.asarray(character(disc).values, dtype=np.int64)
    sel = primes[chi_table[primes % disc.absD] == -1].astype(np.float64)
    log_val = -np.log1p(-sel ** -2.0).sum()
    log_tail = 1.0 / prime_limit + 1.0 / (3.0 * prime_limit ** 3) + 1e-9
    return float(math.exp(log_val)), float(log_tail)


def erdos_number(D, digits: int, route: str = "general") -> ConstantReport:
    """E(D) to `digits` certified decimals.

    route="general" uses v(D)/2**(t+1) * sqrt(L(1) phi(|D|)/pi * T); for
    fundamental D route="fundamental" evaluates the algebraically equal
    |D|/2**omega * sqrt(L(1)/(pi phi(|D|)) * T) form instead (the two are
    compared in the test suite).
    """
    disc = as_discriminant(D)
    wd = digits + 8
    h = class_number(disc.D)
    w = unit_count(disc.D)
    v = v_closed(disc)
    L1v = L1(disc, h, wd)
    T, depth = _minus_product_with_depth(disc, wd)
    pi = pi_const(min(wd, PI_MAX_DIGITS))
    if route == "general":
        inner = L1v * disc.phi_absD / pi * T
        value = inner.sqrt() * (v * Fraction(1, 1 << (disc.t + 1)))
    elif route == "fundamental":
        if not disc.is_fundamental:
            raise ValueError(f"{disc.D} is not fundamental")
        inner = L1v / (pi * disc.phi_absD) * T
        value = inner.sqrt() * Fraction(disc.absD, 1 << disc.omega)
    else:
        raise ValueError(f"unknown route {route!r}")
    value = value.narrow(digits).require_certified()
    inputs = {"h": h, "w": w, "t": disc.t, "v": v}
    return ConstantReport(disc, value, "erdos", depth, inputs)


def bernays_C(D, digits: int) -> ConstantReport:
    """C(D) = 2 E(D)/sqrt(|D|): the population constant of any form of disc D."""
    disc = as_discriminant(D)
    wd = digits + 6
    rep = erdos_number(disc, wd)
    root = BigReal.from_exact(disc.absD, wd).sqrt()
    value = (rep.value * 2 / root).narrow(digits).require_certified()
    return ConstantReport(disc, value, "bernays", rep.terms_used, rep.inputs)


def james_J(D, digits: int) -> ConstantReport:
    """J(D): population constant restricted to n coprime to D.

    pi J(D)**2 = phi(|D|)/|D| * L(1, chi_D) * T(D).
    """
    disc = as_discriminant(D)
    wd = digits + 8
    h = class_number(disc.D)
    w = unit_count(disc.D)
    L1v = L1(disc, h, wd)
    T, depth = _minus_product_with_depth(disc, wd)
    pi = pi_const(min(wd, PI_MAX_DIGITS))
    inner = L1v * Fraction(disc.phi_absD, disc.absD) * T / pi
    value = inner.sqrt().narrow(digits).require_certified()
    inputs = {"h": h, "w": w, "t": disc.t, "v": v_closed(disc)}
    return ConstantReport(disc, value, "james", depth, inputs)


def pall_P(D, digits: int) -> ConstantReport:
    """P(D): population constant with no coprimality condition (Pall).

    b0**2 = 2h/(w sqrt(|D|)) * T(D) * prod_{p'} (1 - 1/p')
            * prod_{p | D, p not p'} (1 - 1/p)**-1,
    P(D) = b0 * prod_{p'} (1 - 1/p'**2)**-1 * prod (1 + p**-(2k+1)),
    where p' runs over p | D with (p > 2 and p**2 | D) or (p = 2 and
    D = 0, 4 mod 16), and the last product is over p with D = p**2k D',
    p**2 not dividing D', k >= 1, (D'/p) != -1.

    Taken verbatim, the classical rule for the last product contradicts the
    fundamental-discriminant identity C(D) = P(D)/2**t(D) at D = -4, so the
    product additionally requires D' to itself be a discriminant; that
    reading reproduces both the known P(-3) value and the fundamental
    identity.  Away from fundamental D the output should be treated as
    experimental.
    """
    disc = as_discriminant(D)
    wd = digits + 8
    h = class_number(disc.D)
    w = unit_count(disc.D)
    T, depth = _minus_product_with_depth(disc, wd)

    pprimes = set()
    for p, e in disc.factors.factors:
        if (p > 2 and e >= 2) or (p == 2 and disc.D % 16 in (0, 4)):
            pprimes.add(p)
    rat = Fraction(2 * h, w)
    for p, _ in disc.factors.factors:
        rat *= Fraction(p - 1, p) if p in pprimes else Fraction(p, p - 1)

    correction = Fraction(1)
    for p in pprimes:
        correction *= Fraction(p * p, p * p - 1)
    for p, e in disc.factors.factors:
        k = e // 2
        if k < 1:
            continue
        Dp = disc.D // p ** (2 * k)
        if Dp % 4 not in (0, 1):
            continue  # keep D' a discriminant (see docstring)
        if kronecker(Dp, p) == -1:
            continue
        correction *= 1 + Fraction(1, p ** (2 * k + 1))

    root = BigReal.from_exact(disc.absD, wd).sqrt()
    b0 = (T * rat / root).sqrt()
    value = (b0 * correction).narrow(digits).require_certified()
    inputs = {"h": h, "w": w, "t": disc.t, "v": v_closed(disc)}
    return ConstantReport(disc, value, "pall", depth, inputs)


def shanks_schmid_table(digits: int) -> list[tuple[int, ConstantReport]]:
    """b_n = C(X**2 + n Y**2) = C(-4n) for the 21 classical n values."""
    return [(n, bernays_C(-4 * n, digits)) for n in SHANKS_SCHMID_NS]
