import math

import numpy as np
import pytest

from erdosnum.forms import (
    QuadForm,
    ResourceLimitError,
    class_number,
    population_count,
    reduce_form,
    reduced_forms,
    represented_upto,
    represents,
    unit_count,
    xi_D,
)
from erdosnum.genus import as_discriminant


def value_set(form: QuadForm, limit: int) -> set:
    """Independent oracle: double loop over the ellipse f(x, y) <= limit."""
    a, b, c = form.coeffs()
    absD = 4 * a * c - b * b
    out = set()
    ymax = math.isqrt(4 * a * limit // absD) + 1
    xmax = math.isqrt(4 * c * limit // absD) + 1
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            v = form(x, y)
            if 1 <= v <= limit:
                out.add(v)
    return out


def random_form(rng) -> QuadForm:
    a = rng.randrange(1, 12)
    b = rng.randrange(-20, 21)
    cmin = b * b // (4 * a) + 1
    c = rng.randrange(cmin, cmin + 30)
    return QuadForm(a, b, c)


class TestReduce:
    def test_identity_form(self):
        assert QuadForm(1, 0, 1).reduced() == QuadForm(1, 0, 1)
        assert reduce_form(QuadForm(1, 0, 1)) == QuadForm(1, 0, 1)

    def test_swap_translate(self):
        # oracle: value sets up to 200 agree, so the forms are equivalent
        f = QuadForm(3, 2, 2)
        r = f.reduced()
        assert r == QuadForm(2, 2, 3)
        assert value_set(f, 200) == value_set(r, 200)

    def test_known_class_representative(self):
        assert QuadForm(4, 4, 125).reduced() == QuadForm(4, 4, 125)

    def test_idempotent_discriminant_preserving(self, rng):
        for _ in range(60):
            f = random_form(rng)
            r = f.reduced()
            assert r.is_reduced
            assert r.discriminant == f.discriminant
            assert r.reduced() == r

    def test_value_sets_invariant(self, rng):
        for _ in range(50):
            f = random_form(rng)
            assert value_set(f, 500) == value_set(f.reduced(), 500)

    def test_rejects_indefinite(self):
        with pytest.raises(ValueError):
            QuadForm(1, 3, 1)  # discriminant 5
        with pytest.raises(ValueError):
            QuadForm(0, 0, 1)
        with pytest.raises(ValueError):
            QuadForm(-1, 0, -1)
        with pytest.raises(ValueError):
            QuadForm(2, 4, 2)  # discriminant 0


def reduced_forms_oracle(D: int) -> list[QuadForm]:
    """Independent enumeration straight from the reduced-form inequalities."""
    out = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == -b or a == c):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    return sorted(out, key=lambda f: f.coeffs())


class TestReducedForms:
    def test_minus_3(self):
        assert reduced_forms(-3) == [QuadForm(1, 1, 1)]
        assert class_number(-3) == 1

    def test_minus_20(self):
        assert reduced_forms(-20) == [QuadForm(1, 0, 5), QuadForm(2, 2, 3)]

    def test_example_minus_1984(self):
        got = {f.coeffs() for f in reduced_forms(-1984)}
        want = {
            (1, 0, 496), (20, 4, 25), (20, -4, 25),
            (4, 4, 125), (5, 4, 100), (5, -4, 100),
            (16, 0, 31), (7, 2, 71), (7, -2, 71),
            (16, 16, 35), (19, 12, 28), (19, -12, 28),
        }
        assert got == want
        assert class_number(-1984) == 12

    def test_against_oracle(self):
        for a in range(3, 400):
            D = -a
            if D % 4 not in (0, 1):
                continue
            assert reduced_forms(D) == reduced_forms_oracle(D)

    def test_outputs_reduced_primitive_distinct(self):
        for D in (-3, -4, -56, -231, -1984):
            forms = reduced_forms(D)
            assert len({f.coeffs() for f in forms}) == len(forms)
            for f in forms:
                assert f.is_reduced and f.is_primitive
                assert f.discriminant == D

    def test_class_number_genus_divisibility(self):
        for a in range(3, 400):
            D = -a
            if D % 4 not in (0, 1):
                continue
            t = as_discriminant(D).t
            assert class_number(D) % (1 << t) == 0

    def test_rejects_non_discriminant(self):
        with pytest.raises(ValueError):
            reduced_forms(-5)


class TestUnitCount:
    def test_values(self):
        assert unit_count(-3) == 6
        assert unit_count(-4) == 4
        assert unit_count(-20) == 2

    def test_rejects(self):
        with pytest.raises(ValueError):
            unit_count(-5)


class TestRepresents:
    def test_examples(self):
        assert represents(QuadForm(1, 1, 1), 7)  # f(1, 2) = 7
        assert represents(QuadForm(16, 16, 35), 124)  # f(1, -2) = 124
        assert not represents(QuadForm(1, 0, 3), 8)

    def test_against_value_set(self, rng):
        for _ in range(12):
            f = random_form(rng)
            vs = value_set(f, 200)
            for n in range(1, 201):
                assert represents(f, n) == (n in vs)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            represents(QuadForm(1, 0, 1), 0)


class TestRepresentedUpto:
    def test_matches_value_set(self, rng):
        for _ in range(12):
            f = random_form(rng)
            hit = represented_upto(f, 300)
            assert set(np.nonzero(hit)[0]) == value_set(f, 300)

    def test_resource_bound(self):
        with pytest.raises(ResourceLimitError):
            represented_upto(QuadForm(1, 0, 1), 10 ** 8 + 1)


class TestPopulation:
    def test_sum_of_two_squares_to_10(self):
        # by hand: 1, 2, 4, 5, 8, 9, 10
        assert population_count(QuadForm(1, 0, 1), 10) == 7

    def test_hexagonal_to_4(self):
        # by hand: 1, 3, 4
        assert population_count(QuadForm(1, 1, 1), 4) == 3

    def test_monotone_and_capped(self):
        f = QuadForm(2, 1, 3)
        prev = 0
        for x in range(1, 120):
            b = population_count(f, x)
            assert prev <= b <= x
            prev = b

    def test_matches_represents(self):
        f = QuadForm(2, 1, 3)
        count = sum(1 for n in range(1, 61) if represents(f, n))
        assert population_count(f, 60) == count


class TestXi:
    def test_examples(self):
        assert xi_D(-4, 9) == 1  # (-4/3) = -1, even exponent
        assert xi_D(-4, 3) == 0
        assert xi_D(-3, 7) == 1

    def test_multiplicative_on_coprime(self, rng):
        for _ in range(100):
            D = rng.choice([-3, -4, -15, -20, -24])
            m = rng.randrange(1, 3000)
            n = rng.randrange(1, 3000)
            if math.gcd(m, n) != 1:
                continue
            assert xi_D(D, m * n) == xi_D(D, m) * xi_D(D, n)

    def test_representability_small(self):
        # the defining property, small-scale; the full check is acceptance 6
        for D in (-3, -4, -7, -15, -20):
            hit = np.zeros(301, dtype=bool)
            for f in reduced_forms(D):
                hit |= represented_upto(f, 300)
            for n in range(1, 301):
                if math.gcd(n, -D) != 1:
                    continue
                assert xi_D(D, n) == int(bool(hit[n]))
