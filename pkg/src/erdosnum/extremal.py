"""Finite search for all discriminants with Erdos number below a threshold.

The pipeline mirrors the finiteness proof it implements:

1. ``derive_cutoff``: from the per-congruence-class constant alpha(D), the
   multiplicative lower bound g(n) = phi(n)/(2**omega(n) sqrt(n)) on odd
   cores, and the totient inequality phi(n) > exp(-gamma) n / loglog n
   (odd n >= 17), produce an explicit D0 with E(D) > r certified for every
   |D| >= D0.
2. Scan |D| < D0 and discard everything whose exact lower bound on E(D)**2
   already clears r**2 (a vectorized float prefilter feeds the exact check).
3. Sharpen with cheap exact bounds (v(D), the class number, a partial Euler
   product) and only then evaluate E(D) itself, escalating precision near
   the threshold.

Every elimination is backed by a proven lower bound, so the survivor list is
exactly {D : E(D) < r}.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import total_ordering

from mpmath import mp, mpf

from ._scan import primes_upto_np, scan_segment
from .arith import factorize, kronecker
from .bigreal import BigReal, PrecisionError, mpf_to_fraction, mp_prec
from .constants import erdos_number
from .forms import class_number
from .genus import Discriminant, as_discriminant, v_closed

__all__ = [
    "SqrtRational",
    "alpha_of_D",
    "lower_bound_E2",
    "euler_gamma",
    "nicolas_lower_phi",
    "CutoffCertificate",
    "derive_cutoff",
    "SearchResult",
    "search_below",
    "SEARCH_MAX_R",
]

logger = logging.getLogger(__name__)

SEARCH_MAX_R = Fraction(3, 2)
_SEGMENT = 1 << 22


@total_ordering
class SqrtRational:
    """The exact nonnegative real sqrt(squared); compared by squaring."""

    __slots__ = ("squared",)

    def __init__(self, squared):
        squared = Fraction(squared)
        if squared < 0:
            raise ValueError("SqrtRational needs a nonnegative square")
        self.squared = squared

    @staticmethod
    def _sq(other):
        if isinstance(other, SqrtRational):
            return other.squared
        if isinstance(other, (int, Fraction)):
            if other < 0:
                return None  # anything here is >= 0 > other
            return Fraction(other) ** 2
        return NotImplemented

    def __eq__(self, other):
        sq = self._sq(other)
        if sq is NotImplemented:
            return NotImplemented
        return sq is not None and self.squared == sq

    def __lt__(self, other):
        sq = self._sq(other)
        if sq is NotImplemented:
            return NotImplemented
        return sq is not None and self.squared < sq

    def __hash__(self):
        return hash(("SqrtRational", self.squared))

    def __float__(self):
        return math.sqrt(float(self.squared))

    def __repr__(self):
        root = Fraction(
            math.isqrt(self.squared.numerator), math.isqrt(self.squared.denominator)
        )
        if root * root == self.squared:
            return f"SqrtRational({root})"
        return f"sqrt({self.squared})"


def _alpha_squared(absD: int) -> Fraction:
    # classes stated on D < 0, translated to |D|
    if absD % 16 == 4:  # D = 12 (mod 16)
        return Fraction(1, 16)
    if absD % 16 == 8 or absD % 32 == 0:  # D = 8 (mod 16) or D = 0 (mod 32)
        return Fraction(1, 8)
    # D = 1 (mod 4), D = 4 (mod 16), or 16 || D
    return Fraction(1, 4)


def alpha_of_D(D) -> SqrtRational:
    """The congruence-class constant with E(D)**2 >= alpha(D) g(|D| odd part).

    alpha itself is defined for every discriminant; the inequality it feeds
    (lower_bound_E2) additionally needs |D| >= 5 so that w(D) = 2.
    """
    return SqrtRational(_alpha_squared(as_discriminant(D).absD))


def lower_bound_E2(D) -> SqrtRational:
    """A proven lower bound on E(D)**2 for |D| >= 5, exact and cheap.

    The maximum of phi(|D|)/(2**(t+2) sqrt(|D|)) and
    alpha(D) * phi(n)/(2**omega(n) sqrt(n)) with n the odd part of |D|.
    """
    disc = as_discriminant(D)
    absD = disc.absD
    if absD < 5:
        raise ValueError("the lower bound needs |D| >= 5 (w(D) = 2)")
    phi = disc.phi_absD
    b1 = SqrtRational(Fraction(phi * phi, 4 ** (disc.t + 2) * absD))
    e = disc.factors.nu(2)
    n = absD >> e
    phi_n = phi if e == 0 else phi >> (e - 1)
    omega_n = disc.omega - (1 if e else 0)
    b2 = SqrtRational(_alpha_squared(absD) * Fraction(phi_n ** 2, 4 ** omega_n * n))
    return max(b1, b2)


_gamma_cache: dict[int, BigReal] = {}
_gamma_lock = threading.Lock()


def euler_gamma(digits: int) -> BigReal:
    """Euler's constant by the harmonic-number expansion with its proven tail.

    gamma = H_N - log N - 1/(2N) + sum_{k<=M} B_2k/(2k N**2k) + R,
    |R| <= |B_{2M+2}|/((2M+2) N**(2M+2)); everything but log N is exact.
    """
    with _gamma_lock:
        hit = _gamma_cache.get(digits)
    if hit is not None:
        return hit
    from .arith import bernoulli

    N = 64
    target = Fraction(1, 10 ** (digits + 10))
    exact = Fraction(0)
    for k in range(1, N + 1):
        exact += Fraction(1, k)
    exact -= Fraction(1, 2 * N)
    M = 1
    while True:
        exact += bernoulli(2 * M) / (2 * M * N ** (2 * M))
        rem = abs(bernoulli(2 * M + 2)) / ((2 * M + 2) * N ** (2 * M + 2))
        if rem < target:
            break
        M += 1
        if M > 120:
            raise PrecisionError("gamma expansion did not converge")
    wd = digits + 8
    log_n = BigReal.from_exact(N, wd).log()
    value = (BigReal.from_exact(exact, wd) - log_n).widen(2 * rem)
    out = value.narrow(digits).require_certified()
    with _gamma_lock:
        _gamma_cache[digits] = out
    return out


def nicolas_lower_phi(n: int, digits: int = 20) -> BigReal:
    """exp(-gamma) n / loglog n, a strict lower bound on phi(n) for odd n >= 17.

    Only the odd case is exposed: it holds unconditionally, and it is all the
    cutoff derivation relies on.  (At even n the same expression is a
    genuinely delicate boundary: its behavior on primorials encodes deep
    open questions, so no claim is made there.)
    """
    if n % 2 == 0 or n < 17:
        raise ValueError("the totient bound requires odd n >= 17")
    wd = digits + 8
    em = (-euler_gamma(wd)).exp()
    loglog = BigReal.from_exact(n, wd).log().log()
    return (em * n / loglog).narrow(digits).require_certified()


@dataclass(frozen=True)
class CutoffCertificate:
    """Audit record of the derived tail cutoff for a threshold r."""

    r: Fraction
    D0: int
    m_star: int
    core_thresholds: dict  # (omega(core), nu_2) -> smallest certified odd core
    small_core_limits: dict  # odd core <= 15 -> largest uncertified nu_2


_ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def _alpha_floor_sq(e: int) -> Fraction:
    """Worst-case alpha(D)**2 over discriminants with nu_2(|D|) = e."""
    if e == 0 or e == 4:
        return Fraction(1, 4)
    if e == 2:
        return Fraction(1, 16)
    if e == 3:
        return Fraction(1, 8)
    if e >= 5:
        return Fraction(1 << e, 256)  # 2**(e-8)
    raise ValueError("nu_2(|D|) = 1 cannot occur for a discriminant")


def derive_cutoff(r: Fraction) -> CutoffCertificate:
    """An explicit D0 such that E(D) > r is certified for every |D| >= D0.

    Cores n (odd part of |D|) with omega(n) >= m_star die by the increasing
    minimal-prime product; cores with omega(n) = m < m_star die once the
    totient inequality makes alpha_floor * g(n) > r**2, separately per 2-adic
    class; cores n <= 15 are handled with their exact g(n).
    """
    r = Fraction(r)
    if not 0 < r <= SEARCH_MAX_R:
        raise ValueError(f"threshold r must be in (0, {SEARCH_MAX_R}]")
    q = r * r
    q2 = q * q

    # minimal-prime route: RHS(m)**2 = prod_{i=2}^{m+1} (p_i - 1)**2 / (4 p_i)
    rhs_sq = Fraction(1)
    rhs_vals = [rhs_sq]
    m_star = None
    for m in range(1, len(_ODD_PRIMES) + 1):
        p = _ODD_PRIMES[m - 1]
        rhs_sq *= Fraction((p - 1) ** 2, 4 * p)
        rhs_vals.append(rhs_sq)
        if m >= 2 and Fraction(1, 16) * rhs_sq > q2:
            m_star = m
            break
    if m_star is None:
        raise PrecisionError(f"no omega cutoff certified for r = {r}")
    # the product factors are >= 1 from p = 7 on, so RHS keeps growing
    assert all(
        rhs_vals[m + 1] >= rhs_vals[m] for m in range(2, m_star)
    ), "minimal-prime product failed to increase"

    # conservative numeric pieces for the totient route
    gam = euler_gamma(30)
    g_hi = mpf_to_fraction(gam.value) + mpf_to_fraction(gam.error_bound)
    with mp_prec(120):
        c_lo = mpf(0.999999) * mp.exp(-(mpf(g_hi.numerator) / g_hi.denominator))

        def certified(n: int, m: int, e: int) -> bool:
            # alpha_floor * exp(-gamma) sqrt(n) / (2**m loglog n) > q, deflated
            asq = _alpha_floor_sq(e)
            lhs = (
                mp.sqrt(mpf(asq.numerator) / asq.denominator)
                * c_lo
                * mp.sqrt(n)
                / ((1 << m) * mp.log(mp.log(n)) * mpf(1.000001))
            )
            return lhs * mpf(0.999999) > mpf(q.numerator) / q.denominator

        def threshold(m: int, e: int) -> int:
            # smallest odd n >= 17 certified; sqrt(n)/loglog(n) increases on
            # n >= 16, so everything above the threshold stays certified
            if certified(17, m, e):
                return 17
            lo, hi = 17, 34
            while not certified(hi, m, e):
                lo, hi = hi, hi * 2
                if hi > 10 ** 18:
                    raise PrecisionError(f"no totient cutoff for r = {r}")
            while hi - lo > 2:
                mid = (lo + hi) // 2 | 1
                if certified(mid, m, e):
                    hi = mid
                else:
                    lo = mid
            return hi

        core_thresholds: dict[tuple[int, int], int] = {}
        best = 17
        for m in range(1, m_star):
            e = 0
            while True:
                n_th = threshold(m, e)
                core_thresholds[(m, e)] = n_th
                best = max(best, n_th << e)
                if e >= 5 and n_th == 17:
                    break  # alpha keeps growing with e from here on
                e += 1
                if e == 1:
                    e = 2  # nu_2 = 1 is impossible for a discriminant
                if e > 400:
                    raise PrecisionError(f"2-power cutoff runaway for r = {r}")

    # exact handling of the eight tiny odd cores
    small_core_limits: dict[int, int] = {}
    for n in range(1, 16, 2):
        fac = factorize(n)
        g_sq = Fraction(fac.phi ** 2, 4 ** fac.omega * n)
        e, last_bad = 0, -1
        while True:
            if _alpha_floor_sq(e) * g_sq <= q2:
                last_bad = e
            elif e >= 6:
                break  # certified and alpha only grows from here
            e += 1
            if e == 1:
                e = 2
            if e > 400:
                raise PrecisionError(f"small-core cutoff runaway for r = {r}")
        if last_bad >= 0:
            small_core_limits[n] = last_bad
            best = max(best, n << last_bad)

    D0 = max(best + 1, 20)
    logger.info("cutoff for r=%s: D0=%d, m*=%d", r, D0, m_star)
    return CutoffCertificate(r, D0, m_star, core_thresholds, small_core_limits)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a threshold search; survivors are sorted by E(D)."""

    r: Fraction
    cutoff_D0: int
    survivors: list  # [(D, BigReal), ...]
    scanned: int
    evaluated: tuple  # every D that needed a full E(D) evaluation (audit)


def _scan_candidates(scan_hi: int, q: Fraction) -> list[int]:
    """All 5 <= |D| < scan_hi whose exact lower bound fails to clear q."""
    primes = primes_upto_np(math.isqrt(scan_hi) + 2)
    thr = float(q * q) * (1.0 + 1e-9)
    rough: list[int] = []
    lo = 5
    while lo < scan_hi:
        hi = min(lo + _SEGMENT, scan_hi)
        rough.extend(int(a) for a in scan_segment(lo, hi, primes, thr))
        lo = hi
    out = [a for a in rough if not lower_bound_E2(-a) >= q]
    logger.info(
        "scan to %d: %d float-filter misses, %d after exact bound",
        scan_hi, len(rough), len(out),
    )
    return out


def _partial_minus_product_sq(disc: Discriminant, limit: int = 100) -> Fraction:
    """Exact square of a partial lower bound for the inert Euler product."""
    t = Fraction(1)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97):
        if p >= limit:
            break
        if kronecker(disc.D, p) == -1:
            t *= Fraction(p * p, p * p - 1)
    return t * t


def _refined_reject(disc: Discriminant, q: Fraction) -> bool:
    """Sharper exact eliminations: E**2 >= v**2 h phi / (4**(t+1) sqrt|D|) * T_part."""
    v = v_closed(disc)
    phi = disc.phi_absD
    absD = disc.absD
    # with h >= 2**t only (no class number computation)
    vb_sq = (v ** 4 * Fraction(phi * phi, 4 ** (disc.t + 2) * absD))
    q2 = q * q
    if vb_sq >= q2:
        return True
    h = class_number(disc.D)
    hb_sq = v ** 4 * h * h * Fraction(phi * phi, 4 ** (2 * disc.t + 2) * absD)
    if hb_sq >= q2:
        return True
    return hb_sq * _partial_minus_product_sq(disc) >= q2


def _decide_below(D: int, r: Fraction, digits: int):
    """Certified comparison of E(D) with r, escalating precision as needed.

    Returns (is_below, report_at_requested_digits_or_None).
    """
    d = min(10, digits)
    for _ in range(5):
        rep = erdos_number(D, d)
        if rep.value.certified_above(r):
            return False, None
        if rep.value.certified_below(r):
            if d >= digits:
                return True, replace(rep, value=rep.value.narrow(digits))
            final = erdos_number(D, digits)
            if final.value.certified_below(r):
                return True, final
            # borderline at the target precision: escalate and retry
        d *= 2
    raise PrecisionError(f"E({D}) is not separable from r = {r} after 4 escalations")


def search_below(r, digits: int) -> SearchResult:
    """Every discriminant with E(D) < r, with E to `digits` certified decimals.

    r must be an exact rational (int, Fraction, or a decimal string such as
    "0.75"); floats are rejected to keep the threshold unambiguous.
    """
    if isinstance(r, float):
        raise TypeError("pass the threshold as an exact rational, not a float")
    r = Fraction(r)
    if not 0 < r <= SEARCH_MAX_R:
        raise ValueError(f"threshold r must be in (0, {SEARCH_MAX_R}]")
    q = r * r
    cert = derive_cutoff(r)
    D0 = cert.D0
    scan_hi = 2 * D0  # the upper half double-checks the cutoff derivation
    candidates = _scan_candidates(scan_hi, q)
    bad = [a for a in candidates if a >= D0]
    if bad:
        raise PrecisionError(
            f"cutoff verification failed at |D| in {bad[:5]} (r = {r})"
        )
    # discriminant-shaped |D| in [3, D0): multiples of 4 plus 3 mod 4
    scanned = (D0 - 1) // 4 + ((D0 - 4) // 4 + 1 if D0 > 3 else 0)

    survivors_d: list[int] = []
    need_full: list[int] = [3, 4]
    for a in candidates:
        disc = as_discriminant(-a)
        if not _refined_reject(disc, q):
            need_full.append(a)
    logger.info("full E(D) evaluations needed: %d", len(need_full))
    logger.debug("evaluation list: %s", [-a for a in need_full])

    survivors = []
    for a in need_full:
        below, rep = _decide_below(-a, r, digits)
        if below:
            survivors.append((-a, rep.value))
            survivors_d.append(-a)
    survivors.sort(key=lambda pair: mpf_to_fraction(pair[1].value))
    logger.info("survivors for r=%s: %s", r, survivors_d)
    return SearchResult(r, D0, survivors, scanned, tuple(-a for a in need_full))
