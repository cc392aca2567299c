"""Integer and rational primitives: factorization, multiplicative functions,
Kronecker symbols, discriminant decomposition, exact Bernoulli numbers.

Everything here is exact integer/rational arithmetic.  Inputs are capped at
2**63; the rest of the library only ever feeds discriminants in the millions
and table parameters in the hundreds, so trial division plus a Brent-cycle
rho fallback is plenty.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "FactoredInt",
    "factorize",
    "is_prime",
    "kronecker",
    "discriminant_decompose",
    "is_discriminant",
    "bernoulli",
    "small_primes",
]

MAX_INPUT = 2 ** 63

_SMALL_SIEVE_LIMIT = 10 ** 6
_small_primes: list[int] = []
_primes_lock = threading.Lock()


def small_primes() -> list[int]:
    """All primes below 10**6, sieved once and cached (treat as read-only)."""
    global _small_primes
    if not _small_primes:
        with _primes_lock:
            if not _small_primes:
                limit = _SMALL_SIEVE_LIMIT
                sieve = bytearray([1]) * (limit + 1)
                sieve[0] = sieve[1] = 0
                for p in range(2, math.isqrt(limit) + 1):
                    if sieve[p]:
                        sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
                _small_primes = [i for i, v in enumerate(sieve) if v]
    return _small_primes


# Deterministic Miller-Rabin witness set for n < 3.3 * 10**24 (covers 2**63).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n <= 2**63 (Miller-Rabin)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    # Deterministic parameter sweep keeps the whole library reproducible.
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = math.gcd(q, n)
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its full prime factorization.

    ``factors`` is sorted by prime; the empty tuple encodes n = 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __int__(self) -> int:
        return self.value

    @property
    def phi(self) -> int:
        """Euler's totient."""
        out = self.value
        for p, _ in self.factors:
            out //= p
            out *= p - 1
        return out

    @property
    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    @property
    def odd_part(self) -> int:
        """Largest odd divisor."""
        return self.value >> self.nu(2)

    def nu(self, p: int) -> int:
        """Exponent of the prime p in the factorization (0 if absent)."""
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            divs = [d * p ** k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factorize(n: int) -> FactoredInt:
    """Full prime factorization of n, 1 <= n <= 2**63.

    Trial division by the cached primes below 10**6, then Brent's rho on
    whatever composite cofactor remains.
    """
    if not isinstance(n, int):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    if n > MAX_INPUT:
        raise ValueError(f"factorize input {n} exceeds the 2**63 bound")
    value = n
    powers: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            powers[p] = e
    if n > 1:
        if n < _SMALL_SIEVE_LIMIT ** 2 or is_prime(n):
            powers[n] = powers.get(n, 0) + 1
        else:
            _factor_into(n, powers)
    return FactoredInt(value, tuple(sorted(powers.items())))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a / n) for n >= 1.

    Completely multiplicative in n; (a/2) is +1, -1, 0 according to
    a mod 8 in {1,7}, {3,5}, or a even.  Coincides with the Legendre
    symbol for odd prime n not dividing a.
    """
    if n == 0:
        raise ValueError("kronecker symbol (a/0) is not supported")
    if n < 0:
        raise ValueError("kronecker here is only needed for n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        r = a & 7
        if r in (1, 7):
            pass
        elif r in (3, 5):
            result = -result
        else:
            return 0
    # Jacobi symbol (a/n) for odd n >= 1 via quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_discriminant(D: int) -> bool:
    """True when D < 0 and D = 0 or 1 (mod 4)."""
    return D < 0 and D % 4 in (0, 1)


def discriminant_decompose(D: int) -> tuple[int, int]:
    """Split a negative discriminant as D = f**2 * d0 with d0 fundamental.

    Returns (f, d0) where f is the conductor (maximal) and d0 has
    conductor 1.
    """
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a (negative) discriminant")
    fac = factorize(-D)
    v = 1
    for p, e in fac.factors:
        v *= p ** (e // 2)
    u = (-D) // (v * v)  # squarefree
    if (-u) % 4 == 1:
        return v, -u
    # -u = 2, 3 (mod 4): the fundamental part picks up the factor 4.
    assert v % 2 == 0, "nondiscriminant slipped through validation"
    return v // 2, -4 * u


_bernoulli_even: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...
_bernoulli_lock = threading.Lock()

BERNOULLI_MAX_INDEX = 512


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k for even k, 2 <= k <= 512.

    Uses the binomial recurrence sum_{r<=m} C(m+1, r) B_r = 0 restricted to
    even indices (odd B's vanish from B_3 on; the lone B_1 = -1/2 term is
    inserted by hand).  Results are cached cumulatively.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError(f"bernoulli expects a positive even index, got {k}")
    if k > BERNOULLI_MAX_INDEX:
        raise ValueError(f"bernoulli index {k} exceeds the cap {BERNOULLI_MAX_INDEX}")
    half = k // 2
    if half < len(_bernoulli_even):
        return _bernoulli_even[half]
    with _bernoulli_lock:
        for m in range(len(_bernoulli_even), half + 1):
            n = 2 * m
            s = Fraction(n + 1, -2)  # the B_1 = -1/2 contribution
            for j in range(m):
                s += math.comb(n + 1, 2 * j) * _bernoulli_even[j]
            _bernoulli_even.append(-s / (n + 1))
        return _bernoulli_even[half]
