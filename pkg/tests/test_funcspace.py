import math

import mpmath
import numpy as np
import numpy.polynomial.chebyshev as npc
import pytest

from chebcontour import (
    ChebSeries,
    Provenance,
    bessel_i,
    bessel_j,
    eval_series,
    exact_coeff,
    exact_coeffs,
    monomial_to_cheb,
    oracle_coeff,
    registry_lookup,
    registry_names,
)
from chebcontour.conditioning import BranchLimit, Entire, Pole
from chebcontour.errors import ChebDomainError, NoOracleError, RegistryError

from conftest import mp_cos_coeff, mp_exp_coeff, mp_pole_coeff, rel

ALL = [
    ("exp", ()),
    ("cos_affine", (2.0, 2.0)),
    ("cos", ()),
    ("pole", (2.0,)),
    ("rational_runge", ()),
    ("rational4", ()),
    ("branch", (2.0, 0.5)),
    ("exp2cos", ()),
    ("poly", (1.0, -2.0, 0.5)),
    ("monomial", (0.0, 1.0, 3.0)),
]


class TestRegistry:
    def test_names(self):
        assert {"exp", "cos_affine", "pole", "rational_runge", "rational4", "branch", "exp2cos", "poly"} <= set(registry_names())

    def test_rho_max(self):
        assert registry_lookup("pole", [2]).rho_max == pytest.approx(2 + math.sqrt(3))
        assert math.isinf(registry_lookup("exp").rho_max)
        assert registry_lookup("rational_runge").rho_max == pytest.approx(1 + math.sqrt(2))
        assert registry_lookup("rational4").rho_max == pytest.approx(2 + math.sqrt(5))
        assert registry_lookup("branch", [3, 0.5]).rho_max == pytest.approx(3 + math.sqrt(8))

    def test_rules(self):
        assert registry_lookup("exp").radius_rule == Entire(0.5, 1.0, -0.5)
        assert registry_lookup("cos_affine", [2, 2]).radius_rule == Entire(1.0, 1.0, -0.5)
        assert isinstance(registry_lookup("pole", [2]).radius_rule, Pole)
        assert isinstance(registry_lookup("branch", [2, 0.5]).radius_rule, BranchLimit)

    def test_rational4_value(self):
        assert registry_lookup("rational4")(0.0) == 0.25

    @pytest.mark.parametrize("name,params", [("nope", ()), ("pole", (1.0,)), ("pole", (0.5,)), ("pole", ()), ("exp", (1.0,)), ("branch", (0.5, 0.5)), ("poly", ())])
    def test_bad_lookup(self, name, params):
        with pytest.raises(RegistryError):
            registry_lookup(name, params)

    @pytest.mark.parametrize("name,params", ALL)
    def test_real_on_interval(self, name, params):
        fn = registry_lookup(name, params)
        x = np.linspace(-1, 1, 100)
        assert np.all(fn(x).imag == 0.0)

    @pytest.mark.parametrize("name,params", ALL)
    def test_schwarz_symmetry(self, name, params):
        fn = registry_lookup(name, params)
        rho = min(fn.rho_max * 0.9, 3.0)
        t = np.linspace(0, 2 * np.pi, 37)
        z = 0.5 * (rho * np.exp(1j * t) + np.exp(-1j * t) / rho)
        a, b = fn(np.conj(z)), np.conj(fn(z))
        assert np.max(np.abs(a - b) / np.maximum(1, np.abs(b))) <= 1e-14

    @pytest.mark.parametrize("name,params", ALL)
    def test_finite_inside(self, name, params):
        fn = registry_lookup(name, params)
        for rho in (1.0, 1.5, min(0.99 * fn.rho_max, 30.0)):
            t = np.linspace(0, 2 * np.pi, 64, endpoint=False)
            z = 0.5 * (rho * np.exp(1j * t) + np.exp(-1j * t) / rho)
            assert np.all(np.isfinite(fn(z)))


class TestBessel:
    def test_values(self):
        assert bessel_i(0, 0) == 1.0
        assert abs(bessel_i(0, 1) - 1.2660658777520084) <= 1e-15
        assert bessel_i(20, 1) == pytest.approx(0.5**20 / math.factorial(20), rel=1e-3)
        assert bessel_j(0, 0) == 1.0
        assert bessel_j(1, 0) == 0.0
        assert abs(bessel_j(0, 2) - 0.22389077914123567) <= 1e-13

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 13, 40, 100])
    @pytest.mark.parametrize("x", [0.25, 1.0, 3.0, 10.0, 50.0])
    def test_i_vs_mpmath(self, n, x):
        assert rel(bessel_i(n, x), float(mpmath.besseli(n, x))) <= 1e-15

    @pytest.mark.parametrize("n", [0, 1, 3, 8, 30])
    @pytest.mark.parametrize("x", [0.5, 2.0, 7.5, 20.0, -3.0])
    def test_j_vs_mpmath(self, n, x):
        ref = float(mpmath.besselj(n, x))
        assert abs(bessel_j(n, x) - ref) <= 1e-14 * max(1.0, abs(ref))

    def test_recurrence(self):
        for x in (0.5, 1.0, 2.0):
            for n in range(1, 11):
                lhs = bessel_i(n - 1, x) - bessel_i(n + 1, x)
                rhs = 2 * n / x * bessel_i(n, x)
                assert rel(lhs, rhs) <= 1e-12

    @pytest.mark.parametrize("call", [lambda: bessel_i(0, -1), lambda: bessel_i(0, 51), lambda: bessel_j(0, 21), lambda: bessel_i(-1, 1)])
    def test_domain(self, call):
        with pytest.raises((ChebDomainError, ValueError)):
            call()


class TestOracles:
    def test_examples(self):
        assert exact_coeff(registry_lookup("exp"), 0) == pytest.approx(2.5321317555040167, rel=1e-15)
        assert exact_coeff(registry_lookup("pole", [2]), 1) == pytest.approx(-0.30940107675850305, rel=1e-14)
        assert exact_coeff(registry_lookup("cos_affine", [2, 2]), 0) == pytest.approx(2 * math.cos(2) * 0.22389077914123567, rel=1e-13)

    def test_provenance(self):
        assert oracle_coeff(registry_lookup("exp"), 3).provenance is Provenance.BESSEL_SERIES
        assert oracle_coeff(registry_lookup("pole", [2]), 3).provenance is Provenance.CLOSED_FORM

    def test_exp_vs_mpmath(self):
        fn = registry_lookup("exp")
        for n in range(0, 101, 7):
            assert rel(exact_coeff(fn, n), mp_exp_coeff(n)) <= 2e-16

    def test_cos_vs_mpmath(self):
        fn = registry_lookup("cos_affine", [2.0, 2.0])
        for n in range(0, 41, 3):
            assert rel(exact_coeff(fn, n), mp_cos_coeff(n, 2, 2)) <= 1e-14

    def test_pole_vs_mpmath(self):
        for a in (2.0, 4.0, 1.25):
            fn = registry_lookup("pole", [a])
            for n in (0, 1, 10, 100):
                assert rel(exact_coeff(fn, n), mp_pole_coeff(n, a)) <= 1e-13

    @pytest.mark.parametrize("name,den", [("rational_runge", 1), ("rational4", 4)])
    def test_rational_vs_quadrature(self, name, den):
        fn = registry_lookup(name)
        for n in (0, 1, 4, 15):
            f = lambda t: (mpmath.cos(t) + 1) / (mpmath.cos(t) ** 2 + den) * mpmath.cos(n * t)
            ref = float(2 / mpmath.pi * mpmath.quad(f, [0, mpmath.pi]))
            assert abs(exact_coeff(fn, n) - ref) <= 1e-14 * max(1, abs(ref))

    def test_no_oracle(self):
        with pytest.raises(NoOracleError):
            exact_coeff(registry_lookup("exp2cos"), 0)

    @pytest.mark.parametrize("name,params", [("exp", ()), ("pole", (2.0,))])
    def test_series_reproduces_function(self, name, params):
        fn = registry_lookup(name, params)
        x = np.linspace(-1, 1, 50)
        s = ChebSeries(exact_coeffs(fn, 60))
        assert np.max(np.abs(eval_series(s, x) - fn(x).real)) <= 1e-12

    def test_poly_plain_coefficients(self):
        fn = registry_lookup("poly", [1.0, 0.0, 0.0, 1.0])
        assert exact_coeffs(fn, 4).tolist() == [2.0, 0.0, 0.0, 1.0, 0.0]
        x = np.linspace(-1, 1, 9)
        assert np.allclose(fn(x).real, 1 + 4 * x**3 - 3 * x)

    def test_monomial_conversion(self, rng):
        for d in (0, 1, 5, 15, 30):
            p = rng.uniform(-1, 1, d + 1)
            ref = npc.poly2cheb(p)
            assert np.allclose(monomial_to_cheb(p), ref, atol=1e-12)

    def test_derivative_oracles(self):
        x = np.linspace(-0.9, 0.9, 7)
        h = 1e-4
        for name, params in [("pole", (2.0,)), ("rational_runge", ()), ("rational4", ()), ("exp2cos", ())]:
            fn = registry_lookup(name, params)
            fd = (fn(x + h).real - fn(x - h).real) / (2 * h)
            assert np.allclose(fn.derivative(x, 1), fd, rtol=1e-6, atol=1e-7)
            assert np.allclose(fn.derivative(x, 0), fn(x).real, rtol=1e-14)
