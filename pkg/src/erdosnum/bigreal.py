"""Self-validating arbitrary-precision reals on top of mpmath.

A BigReal carries the computed mpf value, the number of decimal digits it
promises after the decimal point (``target_digits``), and a rigorous
absolute ``error_bound``.  Every arithmetic operation propagates a forward
error bound: input bounds are combined with the exact first-order estimates
(padded to remain true bounds) plus a generous rounding allowance for the
mpf operation itself.  This is deliberately not interval arithmetic; the
bounds only ever need to stay far below 10**-target, which the >= 20 guard
digits of working precision make easy.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
from mpmath import mp, mpf
from mpmath.libmp import mpf_neg

__all__ = [
    "BigReal",
    "PrecisionError",
    "GUARD_DIGITS",
    "working_prec",
    "mpf_to_fraction",
    "mp_prec",
]

# mpmath's precision lives on a global context, so every precision-sensitive
# section runs under one re-entrant lock; concurrent callers then always see
# bit-identical results.  (CPU-bound mpf work is GIL-serialized anyway.)
_MP_LOCK = threading.RLock()


@contextmanager
def mp_prec(prec: int):
    """Working-precision context that is safe against concurrent callers."""
    with _MP_LOCK:
        with mp.workprec(prec):
            yield


GUARD_DIGITS = 20
_LOG2_10 = 3.321928094887362

# Exact in binary, applied to every propagated bound so that the rounding of
# the bound computation itself cannot understate it.
_BUMP = 1.001953125  # 1 + 2**-9


class PrecisionError(ArithmeticError):
    """An error bound could not be certified at the requested precision."""


def working_prec(digits: int) -> int:
    """Binary working precision for a target of `digits` decimals."""
    return int((digits + GUARD_DIGITS) * _LOG2_10) + 16


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpf."""
    if not mpmath.isfinite(x):
        raise PrecisionError(f"non-finite value {x}")
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    q = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -q if sign else q


def _as_mpf_exact(q, prec: int):
    """mpf for an int/Fraction with the rounding error it incurs."""
    if isinstance(q, int):
        v = mpf(q)
        return v, abs(v) * mpf(2) ** (4 - prec)
    if isinstance(q, Fraction):
        v = mpf(q.numerator) / mpf(q.denominator)
        return v, abs(v) * mpf(2) ** (4 - prec)
    raise TypeError(f"cannot coerce {type(q).__name__} to BigReal")


@dataclass(frozen=True)
class BigReal:
    value: mpmath.mpf
    target_digits: int
    error_bound: mpmath.mpf

    # -- construction -----------------------------------------------------

    @classmethod
    def from_exact(cls, q, digits: int) -> "BigReal":
        """Wrap an int or Fraction; the only error is representation rounding."""
        prec = working_prec(digits)
        with mp_prec(prec):
            v, err = _as_mpf_exact(q, prec)
        return cls(v, digits, err)

    @classmethod
    def from_mpf(cls, v, digits: int, error_bound) -> "BigReal":
        return cls(mpf(v), digits, mpf(error_bound))

    # -- bookkeeping ------------------------------------------------------

    @property
    def certified(self) -> bool:
        """Whether error_bound <= 10**-target_digits."""
        return mpf_to_fraction(self.error_bound) <= Fraction(1, 10 ** self.target_digits)

    def require_certified(self) -> "BigReal":
        if not self.certified:
            raise PrecisionError(
                f"error bound {mpmath.nstr(self.error_bound, 3)} exceeds "
                f"10^-{self.target_digits}"
            )
        return self

    def narrow(self, digits: int) -> "BigReal":
        """Republish with a smaller digit target (bound unchanged)."""
        if digits > self.target_digits:
            raise ValueError("narrow cannot raise the digit target")
        return replace(self, target_digits=digits)

    def widen(self, extra) -> "BigReal":
        """Add an externally derived error term (e.g. a truncation tail)."""
        prec, _ = self._prec_with(None)
        with mp_prec(prec):
            if isinstance(extra, Fraction):
                extra = mpf(extra.numerator) / extra.denominator
            err = (self.error_bound + abs(mpf(extra))) * _BUMP
        return replace(self, error_bound=err)

    def interval(self) -> tuple[Fraction, Fraction]:
        """Exact enclosure [value - err, value + err]."""
        v = mpf_to_fraction(self.value)
        e = mpf_to_fraction(self.error_bound)
        return v - e, v + e

    def certified_below(self, r: Fraction) -> bool:
        lo, hi = self.interval()
        return hi < r

    def certified_above(self, r: Fraction) -> bool:
        lo, hi = self.interval()
        return lo > r

    def decimal(self, places: int | None = None) -> str:
        """Fixed-point rendering with exactly `places` digits after the point."""
        places = self.target_digits if places is None else places
        if places < 1:
            raise ValueError("places must be >= 1")
        scale = 10 ** places
        prec = max(working_prec(self.target_digits), scale.bit_length() + 80)
        with mp_prec(prec):
            n = int(mpmath.nint(self.value * mpf(scale)))
        sign = "-" if n < 0 else ""
        s = str(abs(n)).rjust(places + 1, "0")
        return f"{sign}{s[:-places]}.{s[-places:]}"

    def __str__(self) -> str:
        return self.decimal()

    def __float__(self) -> float:
        return float(self.value)

    # -- arithmetic -------------------------------------------------------

    def _prec_with(self, other: "BigReal | None" = None) -> tuple[int, int]:
        tgt = self.target_digits if other is None else min(self.target_digits, other.target_digits)
        return working_prec(tgt), tgt

    def _coerce(self, other, prec: int) -> "tuple[mpmath.mpf, mpmath.mpf] | None":
        if isinstance(other, BigReal):
            return other.value, other.error_bound
        if isinstance(other, (int, Fraction)):
            return _as_mpf_exact(other, prec)
        return None

    @staticmethod
    def _rnd(v, prec: int):
        return abs(v) * mpf(2) ** (4 - prec)

    def __add__(self, other):
        prec, tgt = self._prec_with(other if isinstance(other, BigReal) else None)
        with mp_prec(prec):
            co = self._coerce(other, prec)
            if co is None:
                return NotImplemented
            ov, oe = co
            v = self.value + ov
            err = (self.error_bound + oe + self._rnd(v, prec)) * _BUMP
        return BigReal(v, tgt, err)

    __radd__ = __add__

    def __neg__(self):
        # sign flip on the raw mantissa: exact at any ambient precision
        v = mp.make_mpf(mpf_neg(self.value._mpf_))
        return BigReal(v, self.target_digits, self.error_bound)

    def __sub__(self, other):
        if isinstance(other, (BigReal, int, Fraction)):
            return self.__add__(-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        prec, tgt = self._prec_with(other if isinstance(other, BigReal) else None)
        with mp_prec(prec):
            co = self._coerce(other, prec)
            if co is None:
                return NotImplemented
            ov, oe = co
            v = self.value * ov
            err = (
                abs(self.value) * oe
                + abs(ov) * self.error_bound
                + self.error_bound * oe
                + self._rnd(v, prec)
            ) * _BUMP
        return BigReal(v, tgt, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("BigReal division by zero")
            return self.__mul__(Fraction(1, 1) / Fraction(other))
        if not isinstance(other, BigReal):
            return NotImplemented
        prec, tgt = self._prec_with(other)
        with mp_prec(prec):
            ov, oe = other.value, other.error_bound
            if not abs(ov) > oe:
                raise PrecisionError("divisor is not certified away from zero")
            v = self.value / ov
            err = (
                (self.error_bound + abs(v) * oe) / (abs(ov) - oe)
                + self._rnd(v, prec)
            ) * _BUMP
        return BigReal(v, tgt, err)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return BigReal.from_exact(other, self.target_digits).__truediv__(self)
        return NotImplemented

    def sqrt(self) -> "BigReal":
        prec, tgt = self._prec_with(None)
        with mp_prec(prec):
            if not self.value > self.error_bound:
                raise PrecisionError("sqrt needs a value certified positive")
            v = mpmath.sqrt(self.value)
            lo = mpmath.sqrt(self.value - self.error_bound)
            err = (self.error_bound / (lo + v) + self._rnd(v, prec)) * _BUMP
        return BigReal(v, tgt, err)

    def nth_root(self, k: int) -> "BigReal":
        """Principal k-th root, k >= 1 (value must be certified positive)."""
        if k == 1:
            return self
        if k == 2:
            return self.sqrt()
        prec, tgt = self._prec_with(None)
        with mp_prec(prec):
            if not self.value > self.error_bound:
                raise PrecisionError("nth_root needs a value certified positive")
            v = mpmath.root(self.value, k)
            lo = self.value - self.error_bound
            # |x^(1/k)| has decreasing derivative, so bound it at the left end.
            deriv = mpmath.root(lo, k) / (k * lo)
            err = (self.error_bound * deriv + self._rnd(v, prec)) * _BUMP
        return BigReal(v, tgt, err)

    def log(self) -> "BigReal":
        prec, tgt = self._prec_with(None)
        with mp_prec(prec):
            if not self.value > self.error_bound:
                raise PrecisionError("log needs a value certified positive")
            v = mpmath.log(self.value)
            err = (
                self.error_bound / (self.value - self.error_bound)
                + self._rnd(v, prec)
                + mpf(2) ** (4 - prec)
            ) * _BUMP
        return BigReal(v, tgt, err)

    def exp(self) -> "BigReal":
        prec, tgt = self._prec_with(None)
        with mp_prec(prec):
            if not self.error_bound < 0.5:
                raise PrecisionError("exp input error bound too large to certify")
            v = mpmath.exp(self.value)
            err = (
                v * self.error_bound * (1 + self.error_bound)
                + self._rnd(v, prec)
            ) * _BUMP
        return BigReal(v, tgt, err)

    def powi(self, k: int) -> "BigReal":
        """Integer power by repeated squaring, k >= 1."""
        if k < 1:
            raise ValueError("powi expects k >= 1")
        acc: BigReal | None = None
        base = self
        while k:
            if k & 1:
                acc = base if acc is None else acc * base
            k >>= 1
            if k:
                base = base * base
        assert acc is not None
        return acc
