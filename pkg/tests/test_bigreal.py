import math
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from erdosnum.bigreal import BigReal, PrecisionError, mpf_to_fraction, working_prec


def rand_fraction(rng, lo=1, hi=10 ** 6) -> Fraction:
    return Fraction(rng.randrange(lo, hi), rng.randrange(lo, hi))


class TestConstruction:
    def test_from_int(self):
        x = BigReal.from_exact(7, 20)
        assert float(x.value) == 7.0
        assert x.certified

    def test_from_fraction_decimal(self):
        x = BigReal.from_exact(Fraction(1, 3), 20)
        assert x.decimal() == "0.33333333333333333333"
        assert x.decimal(5) == "0.33333"

    def test_negative_decimal(self):
        x = BigReal.from_exact(Fraction(-22, 7), 10)
        assert x.decimal() == "-3.1428571429"

    def test_decimal_fixed_point_never_scientific(self):
        s = BigReal.from_exact(Fraction(1, 10 ** 8), 30).decimal()
        assert "e" not in s and s.startswith("0.0000000")

    def test_mpf_to_fraction_roundtrip(self, rng):
        with mp.workprec(80):
            for _ in range(50):
                q = rand_fraction(rng)
                v = mpmath.mpf(q.numerator) / q.denominator
                f = mpf_to_fraction(v)
                # exact dyadic value of the mpf, so within one ulp of q
                assert abs(f - q) <= Fraction(1, 2 ** 70) * q


class TestErrorPropagation:
    """Bounds must contain the exact rational result of every op chain."""

    def test_add_mul_div_chains(self, rng):
        for _ in range(80):
            qs = [rand_fraction(rng) for _ in range(4)]
            xs = [BigReal.from_exact(q, 25) for q in qs]
            got = (xs[0] + xs[1]) * xs[2] - xs[0] / xs[3]
            exact = (qs[0] + qs[1]) * qs[2] - qs[0] / qs[3]
            lo, hi = got.interval()
            assert lo <= exact <= hi
            assert got.certified

    def test_mixed_scalar_ops(self, rng):
        for _ in range(40):
            q = rand_fraction(rng)
            x = BigReal.from_exact(q, 25)
            got = (x * 3 + Fraction(1, 7)) / 2 - 5
            exact = (q * 3 + Fraction(1, 7)) / 2 - 5
            lo, hi = got.interval()
            assert lo <= exact <= hi

    def test_powi(self, rng):
        for _ in range(30):
            q = rand_fraction(rng, 1, 50)
            x = BigReal.from_exact(q, 25)
            lo, hi = x.powi(7).interval()
            assert lo <= q ** 7 <= hi

    def test_sqrt_squares_back(self, rng):
        for _ in range(40):
            q = rand_fraction(rng)
            r = BigReal.from_exact(q, 25).sqrt()
            lo, hi = (r * r).interval()
            assert lo <= q <= hi

    def test_log_exp_roundtrip(self, rng):
        for _ in range(30):
            q = rand_fraction(rng, 1, 1000)
            x = BigReal.from_exact(q, 25)
            back = x.log().exp()
            lo, hi = back.interval()
            assert lo <= q <= hi

    def test_nth_root(self, rng):
        for _ in range(30):
            q = rand_fraction(rng, 1, 1000)
            r = BigReal.from_exact(q, 25).nth_root(5)
            lo, hi = r.powi(5).interval()
            assert lo <= q <= hi


class TestGuards:
    def test_sqrt_needs_positive(self):
        with pytest.raises(PrecisionError):
            BigReal.from_exact(0, 20).sqrt()
        with pytest.raises(PrecisionError):
            BigReal.from_exact(-4, 20).sqrt()

    def test_log_needs_positive(self):
        with pytest.raises(PrecisionError):
            BigReal.from_exact(-1, 20).log()

    def test_division_by_uncertified_zero(self):
        tiny = BigReal.from_mpf(mpmath.mpf(0), 20, mpmath.mpf(1))
        with pytest.raises(PrecisionError):
            BigReal.from_exact(1, 20) / tiny
        with pytest.raises(ZeroDivisionError):
            BigReal.from_exact(1, 20) / 0

    def test_require_certified(self):
        bad = BigReal.from_mpf(mpmath.mpf(1), 20, mpmath.mpf(1e-3))
        assert not bad.certified
        with pytest.raises(PrecisionError):
            bad.require_certified()

    def test_narrow_widen(self):
        x = BigReal.from_exact(Fraction(2, 3), 30)
        assert x.narrow(10).target_digits == 10
        with pytest.raises(ValueError):
            x.narrow(40)
        w = x.widen(Fraction(1, 10 ** 5))
        assert mpf_to_fraction(w.error_bound) >= Fraction(1, 10 ** 5)
        assert not w.certified


class TestAmbientPrecisionIndependence:
    def test_neg_is_exact_at_low_ambient_dps(self):
        # regression: unary minus must not round to the ambient precision
        old = mp.dps
        try:
            mp.dps = 15
            x = BigReal.from_exact(Fraction(1, 3), 40)
            y = -x
            assert mpf_to_fraction(y.value) == -mpf_to_fraction(x.value)
            z = BigReal.from_exact(Fraction(7, 11), 40) - x
            exact = Fraction(7, 11) - Fraction(1, 3)
            lo, hi = z.interval()
            assert lo <= exact <= hi
            assert abs(mpf_to_fraction(z.value) - exact) < Fraction(1, 10 ** 45)
        finally:
            mp.dps = old

    def test_ops_reach_full_precision_regardless_of_ambient(self):
        old = mp.dps
        try:
            mp.dps = 15
            x = BigReal.from_exact(Fraction(1, 7), 35)
            s = x + x + x + x + x + x + x
            assert abs(mpf_to_fraction(s.value) - 1) < Fraction(1, 10 ** 40)
        finally:
            mp.dps = old


def test_working_prec_guard_digits():
    # at least 15 guard digits beyond the target
    for d in (5, 10, 30, 100):
        assert working_prec(d) >= (d + 15) * math.log2(10)


def test_certified_comparisons():
    x = BigReal.from_exact(Fraction(1, 2), 30)
    assert x.certified_below(Fraction(51, 100))
    assert x.certified_above(Fraction(49, 100))
    assert not x.certified_below(Fraction(1, 2))
    assert not x.certified_above(Fraction(1, 2))
