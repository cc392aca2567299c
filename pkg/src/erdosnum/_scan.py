"""Segmented sieve kernels for the discriminant scan (numba-compiled).

The scan works on |D| (positive).  Sign flips matter for the congruence
classes: D = 4 (mod 16) means |D| = 12 (mod 16), and so on.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

__all__ = ["scan_segment", "primes_upto_np"]


def primes_upto_np(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@njit(cache=True)
def _phi_omega_segment(lo, hi, primes):  # pragma: no cover - compiled
    n = hi - lo
    rem = np.empty(n, dtype=np.int64)
    phi = np.ones(n, dtype=np.int64)
    omega = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        rem[i] = lo + i
    for p in primes:
        if p * p >= hi:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi, p):
            i = m - lo
            pk = 1
            while rem[i] % p == 0:
                rem[i] //= p
                pk *= p
            phi[i] *= (pk // p) * (p - 1)
            omega[i] += 1
    for i in range(n):
        if rem[i] > 1:  # a single prime factor > sqrt(hi) is left
            phi[i] *= rem[i] - 1
            omega[i] += 1
    return phi, omega


@njit(cache=True)
def _filter_segment(lo, hi, phi, omega, thr):  # pragma: no cover - compiled
    """|D| in [lo, hi) that the float lower bound fails to certify above thr.

    thr is q**2 pre-inflated by the safety margin; the bound itself is
    deflated, so only clear exceedances are discarded.  Every survivor gets
    an exact recheck in Python.
    """
    out = np.empty(hi - lo, dtype=np.int64)
    cnt = 0
    for i in range(hi - lo):
        a = lo + i
        m4 = a & 3
        if m4 != 0 and m4 != 3:
            continue
        om = int(omega[i])
        if a % 32 == 0:
            t = om
        elif a % 16 == 12:  # D = 4 (mod 16)
            t = om - 2
        else:
            t = om - 1
        if t < 0:
            t = 0
        ph = float(phi[i])
        b1 = ph * ph / (4.0 ** (t + 2) * a)
        if b1 * (1.0 - 1e-12) > thr:
            continue
        out[cnt] = a
        cnt += 1
    return out[:cnt]


def scan_segment(lo: int, hi: int, primes: np.ndarray, thr: float) -> np.ndarray:
    phi, omega = _phi_omega_segment(lo, hi, primes)
    return _filter_segment(lo, hi, phi, omega, thr)
