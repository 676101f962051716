"""Special functions checked against exact rational arithmetic."""

import math
from fractions import Fraction

import numpy as np
import pytest

from fockchannel import bessel_i0_scaled, laguerre, legendre
from fockchannel.errors import ValidationError
from fockchannel.quadrature import integrate_1d
from fockchannel.specialfn import MAX_ORDER, legendre_coefficients


def laguerre_exact(n, x):
    """Sum formula sum_m (-x)^m / m! * C(n, m) in exact rationals."""
    x = Fraction(x)
    return sum((-x) ** m * Fraction(math.comb(n, m), math.factorial(m))
               for m in range(n + 1))


def legendre_exact(n, x):
    """Explicit monomial expansion of P_n in exact rationals."""
    x = Fraction(x)
    total = sum((-1) ** m * math.comb(n, m) * math.comb(2 * n - 2 * m, n)
                * x ** (n - 2 * m)
                for m in range(n // 2 + 1))
    return total / Fraction(2 ** n)


def i0_scaled_exact(z_rational, terms=140):
    """Partial sums of I_0's power series in rationals, scaled by e^{-z}."""
    z = Fraction(z_rational)
    q = z * z / 4
    term = Fraction(1)
    total = Fraction(1)
    for k in range(1, terms):
        term = term * q / (k * k)
        total += term
    assert term < Fraction(1, 10 ** 25) * total
    return float(total) * math.exp(-float(z))


class TestLaguerre:
    def test_order_zero_is_one(self):
        for x in (-3.0, 0.0, 1.7, 42.0):
            assert laguerre(0, x) == 1.0

    def test_order_one(self):
        assert laguerre(1, 3.0) == -2.0

    def test_sum_formula_example(self):
        assert laguerre_exact(2, 2) == -1
        assert laguerre(2, 2.0) == pytest.approx(-1.0, abs=1e-14)

    @pytest.mark.parametrize("n", range(21))
    def test_recurrence_matches_exact_rationals(self, n):
        for j in range(0, 101, 5):
            x = Fraction(j, 2)
            exact = laguerre_exact(n, x)
            got = laguerre(n, float(x))
            if exact == 0:
                assert abs(got) < 1e-10
            else:
                assert abs(got - float(exact)) <= 1e-10 * abs(float(exact))

    def test_value_at_zero_all_orders(self):
        for n in range(MAX_ORDER + 1):
            assert abs(laguerre(n, 0.0) - 1.0) <= 1e-14

    def test_array_shapes(self):
        x = np.linspace(0, 5, 12).reshape(3, 4)
        out = laguerre(3, x)
        assert out.shape == (3, 4)
        assert isinstance(laguerre(3, 1.0), float)


class TestLegendre:
    def test_trivial_values(self):
        assert legendre(0, 7.3) == 1.0
        assert legendre(1, 1.5) == 1.5
        # Rodrigues at n=2: (3 x^2 - 1)/2
        assert legendre(2, 2.0) == pytest.approx(5.5, abs=1e-14)

    @pytest.mark.parametrize("n", range(21))
    def test_recurrence_matches_exact_rationals(self, n):
        for x in (Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2),
                  Fraction(3, 2), Fraction(3), Fraction(21, 2), Fraction(25)):
            exact = legendre_exact(n, x)
            got = legendre(n, float(x))
            if exact == 0:
                assert abs(got) < 1e-10
            else:
                assert abs(got - float(exact)) <= 1e-10 * abs(float(exact))

    def test_value_at_one_all_orders(self):
        for n in range(MAX_ORDER + 1):
            assert abs(legendre(n, 1.0) - 1.0) <= 1e-14

    def test_coefficients(self):
        # P_3 = (5 x^3 - 3 x)/2
        np.testing.assert_allclose(legendre_coefficients(3),
                                   [0.0, -1.5, 0.0, 2.5], atol=0)
        coeffs = legendre_coefficients(12)
        x = 1.37
        direct = sum(c * x ** j for j, c in enumerate(coeffs))
        assert direct == pytest.approx(legendre(12, x), rel=1e-12)


class TestBesselI0Scaled:
    def test_at_zero(self):
        assert bessel_i0_scaled(0.0) == 1.0

    def test_series_value_at_one(self):
        assert bessel_i0_scaled(1.0) == pytest.approx(0.46575960759, abs=1e-9)
        assert bessel_i0_scaled(1.0) == pytest.approx(i0_scaled_exact(1), rel=1e-13)

    @pytest.mark.parametrize("z", [Fraction(39, 2), Fraction(41, 2), Fraction(97, 4)])
    def test_both_branches_match_exact_series(self, z):
        assert bessel_i0_scaled(float(z)) == pytest.approx(
            i0_scaled_exact(z), rel=1e-12)

    def test_branch_accuracy_straddling_crossover(self):
        # both branches within 1e-12 of the exact series right at the switch
        for num in (20 * 10 ** 9 - 1, 20 * 10 ** 9 + 1):
            z = Fraction(num, 10 ** 9)
            assert bessel_i0_scaled(float(z)) == pytest.approx(
                i0_scaled_exact(z), rel=1e-12)

    def test_bounded_and_monotone_decreasing(self):
        z = np.linspace(0.0, 200.0, 400)
        vals = bessel_i0_scaled(z)
        assert np.all(vals > 0) and np.all(vals <= 1.0)
        assert np.all(np.diff(vals) < 0)

    def test_unscaled_is_increasing_and_at_least_one(self):
        z = np.linspace(0.0, 50.0, 101)
        unscaled = bessel_i0_scaled(z) * np.exp(z)
        assert np.all(unscaled >= 1.0 - 1e-14)
        assert np.all(np.diff(unscaled) > 0)

    def test_domain_error(self):
        with pytest.raises(ValidationError):
            bessel_i0_scaled(-0.1)


class TestValidation:
    @pytest.mark.parametrize("bad", [-1, MAX_ORDER + 1, 2.5, True])
    def test_order_rejected(self, bad):
        with pytest.raises(ValidationError):
            laguerre(bad, 1.0)
        with pytest.raises(ValidationError):
            legendre(bad, 1.0)

    def test_order_cap_accepted(self):
        assert math.isfinite(laguerre(MAX_ORDER, 10.0))

    @pytest.mark.parametrize("bad", [float("nan"), float("inf")])
    def test_nonfinite_rejected(self, bad):
        with pytest.raises(ValidationError):
            laguerre(2, bad)
        with pytest.raises(ValidationError):
            bessel_i0_scaled(bad)


def test_laguerre_orthogonality_smoke():
    """int_0^inf e^{-x} L_n L_m dx = delta_nm, via the package's own quadrature."""
    for n in range(6):
        for m in range(n + 1):
            def f(x, n=n, m=m):
                return np.exp(-x) * laguerre(n, x) * laguerre(m, x)
            val, _ = integrate_1d(f, 0.0, 60.0, abs_tol=1e-12)
            assert val == pytest.approx(1.0 if n == m else 0.0, abs=1e-8)
