from fractions import Fraction

import numpy as np
import pytest

from erdosnum.forms import reduced_forms, represented_upto
from erdosnum.genus import Discriminant, as_discriminant, g_count, t_of_D, v_closed, v_series


def all_discriminants(limit: int):
    for a in range(3, limit + 1):
        if a % 4 in (0, 3):
            yield -a


class TestDiscriminant:
    def test_fields(self):
        d = Discriminant.from_int(-1984)
        assert (d.f, d.d0, d.omega, d.t, d.phi_absD) == (8, -31, 2, 2, 960)
        assert d.f ** 2 * d.d0 == d.D
        assert not d.is_fundamental
        assert as_discriminant(d.d0).is_fundamental

    def test_validation(self):
        for D in (-5, 0, 7, -2):
            with pytest.raises(ValueError):
                Discriminant.from_int(D)


class TestT:
    def test_examples(self):
        assert t_of_D(-3) == 0
        assert t_of_D(-1984) == 2  # 2^t = 4 genera
        assert t_of_D(-4) == 0
        assert t_of_D(-12) == 0
        assert t_of_D(-20) == 1

    def test_case_split(self):
        # D = 0 (mod 32) keeps omega; D = 4 (mod 16) drops two
        assert t_of_D(-32 * 3) == 2  # omega(96) = 2
        assert t_of_D(-28) == 0  # -28 = 4 (mod 16), omega = 2

    def test_nonnegative(self):
        for D in all_discriminants(500):
            assert t_of_D(D) >= 0


class TestGCount:
    def test_coprime_representable_is_one(self):
        assert g_count(7, as_discriminant(-3)) == 1

    def test_example_families(self):
        d = as_discriminant(-1984)
        for a in (0, 1, 2):
            assert g_count(31 ** a, d) == 1
            assert g_count(4 * 31 ** a, d) == 2
            assert g_count(16 * 31 ** a, d) == 4
            for b in (0, 1, 3):
                assert g_count(64 * 31 ** a * 2 ** b, d) == 4

    def test_nonsquare_gcd_vanishes(self):
        assert g_count(2, as_discriminant(-1984)) == 0

    def test_power_of_two_dividing(self):
        for D in (-48, -180, -1984, -1008):
            d = as_discriminant(D)
            for n in range(1, 400):
                g = g_count(n, d)
                if g:
                    assert (1 << d.t) % g == 0

    def test_n_one(self):
        for D in (-3, -4, -48, -1984):
            assert g_count(1, as_discriminant(D)) == 1

    def test_representability_small(self):
        # g(n, D) > 0 iff some reduced form represents n (full run: acceptance 5)
        for D in all_discriminants(60):
            d = as_discriminant(D)
            hit = np.zeros(201, dtype=bool)
            for f in reduced_forms(D):
                hit |= represented_upto(f, 200)
            for n in range(1, 201):
                assert (g_count(n, d) > 0) == bool(hit[n]), (D, n)

    def test_rejects(self):
        with pytest.raises(ValueError):
            g_count(0, as_discriminant(-3))


class TestVClosed:
    def test_example_1984(self):
        assert v_closed(-1984) == Fraction(31, 16)

    def test_fundamentals(self):
        assert v_closed(-3) == Fraction(3, 2)
        assert v_closed(-4) == Fraction(2)
        for D in all_discriminants(300):
            d = as_discriminant(D)
            if d.is_fundamental:
                assert v_closed(d) == Fraction(d.absD, d.phi_absD)

    def test_hand_values(self):
        # -12: prefactor 12/phi(12) * (p = 2 inert for -3) 2/3 = 2; inner sum 1
        assert v_closed(-12) == Fraction(2)
        # -16: f = 2, d0 = -4; worked by hand from the conductor sum
        assert v_closed(-16) == Fraction(3, 2)

    def test_positive(self):
        for D in all_discriminants(250):
            assert v_closed(D) > 0


class TestVSeries:
    def test_example_1984(self):
        br = v_series(-1984, 10 ** 6)
        assert br.lower <= Fraction(31, 16) <= br.lower + br.tail_bound
        assert br.tail_bound < Fraction(1, 10 ** 4)

    def test_fundamental_minus_3(self):
        br = v_series(-3, 3 ** 10)
        assert br.lower <= Fraction(3, 2) <= br.lower + br.tail_bound

    def test_minus_12(self):
        br = v_series(-12, 12 ** 5)
        assert br.lower <= Fraction(2) <= br.lower + br.tail_bound

    def test_brackets_closed_form(self):
        for D in all_discriminants(400):
            br = v_series(D, 10 ** 7)
            v = v_closed(D)
            assert br.lower <= v <= br.lower + br.tail_bound, D

    def test_rejects_small_bound(self):
        with pytest.raises(ValueError):
            v_series(-1984, 100)
