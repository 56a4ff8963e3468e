import math
import warnings

import numpy as np
import numpy.polynomial.chebyshev as npc
import pytest

from chebcontour import (
    ChebSeries,
    ExtrapolationWarning,
    Kind,
    differentiate,
    eval_series,
    inverse_joukowski,
    joukowski,
    t_to_u,
)
from chebcontour.errors import ChebDomainError, InvalidSeriesError, KindMismatchError

from conftest import mp_exp_coeff


def to_numpy(stored):
    c = np.array(stored, dtype=float)
    c[0] *= 0.5
    return c


class TestSeries:
    def test_constant_halved(self):
        assert eval_series(ChebSeries([2.0]), 0.5) == 1.0

    def test_identity(self):
        assert eval_series(ChebSeries([0.0, 1.0]), 0.5) == 0.5

    def test_exp_at_zero(self):
        s = ChebSeries([mp_exp_coeff(k) for k in range(21)])
        assert abs(eval_series(s, 0.0) - 1.0) <= 1e-14

    def test_empty_rejected(self):
        with pytest.raises(InvalidSeriesError):
            ChebSeries([])

    @pytest.mark.parametrize("bad", [math.nan, math.inf])
    def test_nonfinite_rejected(self, bad):
        with pytest.raises(InvalidSeriesError):
            ChebSeries([1.0, bad])

    def test_immutable(self):
        s = ChebSeries([1.0, 2.0])
        with pytest.raises(ValueError):
            s.coeffs[0] = 3.0

    def test_second_kind_no_halving(self):
        # U_0 = 1, U_1 = 2x
        s = ChebSeries([1.0, 1.0], Kind.SECOND)
        assert eval_series(s, 0.25) == pytest.approx(1.5, abs=1e-15)

    def test_extrapolation_flagged(self):
        with pytest.warns(ExtrapolationWarning):
            v = eval_series(ChebSeries([0.0, 0.0, 1.0]), 2.0)
        assert v == pytest.approx(7.0)

    def test_no_warning_inside(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            eval_series(ChebSeries([1.0, 2.0]), np.linspace(-1, 1, 11))

    def test_clenshaw_vs_direct(self, rng):
        for _ in range(20):
            c = rng.standard_normal(rng.integers(1, 31))
            x = rng.uniform(-1, 1, 50)
            direct = 0.5 * c[0] + sum(c[k] * np.cos(k * np.arccos(x)) for k in range(1, c.size))
            assert np.max(np.abs(eval_series(ChebSeries(c), x) - direct)) <= 1e-12

    def test_matches_numpy_chebval(self, rng):
        c = rng.standard_normal(25)
        x = rng.uniform(-1, 1, 40)
        assert np.allclose(eval_series(ChebSeries(c), x), npc.chebval(x, to_numpy(c)), atol=1e-13)

    def test_complex_argument(self):
        s = ChebSeries([0.0, 0.0, 1.0])
        z = 0.3 + 0.4j
        assert eval_series(s, z) == pytest.approx(2 * z * z - 1)


class TestJoukowski:
    def test_fixed_point(self):
        assert joukowski(1.0) == 1.0

    def test_i_maps_to_zero(self):
        assert abs(joukowski(1j)) <= 1e-16

    def test_real(self):
        assert joukowski(3.7320508075688776) == pytest.approx(2.0, rel=1e-15)

    def test_zero_rejected(self):
        with pytest.raises(ChebDomainError):
            joukowski(0.0)

    def test_inverse_values(self):
        assert inverse_joukowski(1.0) == 1.0
        assert inverse_joukowski(2.0) == pytest.approx(2 + math.sqrt(3), rel=1e-15)
        assert abs(inverse_joukowski(-2.0)) == pytest.approx(2 + math.sqrt(3), rel=1e-14)

    def test_on_interval_unit_modulus(self):
        x = np.linspace(-1, 1, 21)
        u = inverse_joukowski(x)
        assert np.allclose(np.abs(u), 1.0, atol=1e-15)
        assert np.all(u.imag >= 0)

    def test_round_trip_exterior(self, rng):
        r = rng.uniform(1.05, 20, 400)
        t = rng.uniform(0, 2 * np.pi, 400)
        z = r * np.exp(1j * t)
        u = inverse_joukowski(z)
        assert np.all(np.abs(u) >= 1.0)
        assert np.max(np.abs(joukowski(u) - z) / np.abs(z)) <= 1e-13

    def test_branch_continuous_across_imaginary_axis(self):
        z = np.array([1e-12 + 2j, -1e-12 + 2j])
        u = inverse_joukowski(z)
        assert abs(u[0] - u[1]) < 1e-10


class TestTtoU:
    def test_constant(self):
        assert t_to_u(ChebSeries([2.0])) == ChebSeries([1.0], Kind.SECOND)

    def test_identity(self):
        assert np.allclose(t_to_u(ChebSeries([0.0, 1.0])).coeffs, [0.0, 0.5])

    def test_kind_checked(self):
        with pytest.raises(KindMismatchError):
            t_to_u(ChebSeries([1.0], Kind.SECOND))

    def test_values_preserved(self, rng):
        for _ in range(10):
            c = np.concatenate([rng.standard_normal(rng.integers(1, 30)), [0.0, 0.0]])
            x = rng.uniform(-1, 1, 50)
            t = ChebSeries(c)
            assert np.max(np.abs(eval_series(t, x) - eval_series(t_to_u(t), x))) <= 1e-12


class TestDifferentiate:
    def test_T2(self):
        assert np.allclose(differentiate(ChebSeries([0, 0, 1]), 1).coeffs, [0, 4])

    def test_x(self):
        assert np.allclose(differentiate(ChebSeries([0, 1]), 1).coeffs, [2])

    def test_T3_second(self):
        assert np.allclose(differentiate(ChebSeries([0, 0, 0, 1]), 2).coeffs, [0, 24])

    def test_identity_and_exhaustion(self):
        s = ChebSeries([1.0, 2.0, 3.0])
        assert differentiate(s, 0) == s
        assert differentiate(s, 5) == ChebSeries([0.0])

    def test_negative_order(self):
        with pytest.raises(ValueError):
            differentiate(ChebSeries([1.0]), -1)

    def test_matches_numpy_chebder(self, rng):
        for s in (1, 2, 5):
            c = rng.standard_normal(20)
            ours = differentiate(ChebSeries(c), s).plain_coeffs()
            ref = npc.chebder(to_numpy(c), s)
            assert np.allclose(ours, ref, rtol=1e-13, atol=1e-10)

    def test_linear(self, rng):
        p, q = rng.standard_normal(21), rng.standard_normal(21)
        a, b = 0.7, -1.3
        lhs = differentiate(ChebSeries(a * p + b * q), 1).coeffs
        rhs = a * differentiate(ChebSeries(p), 1).coeffs + b * differentiate(ChebSeries(q), 1).coeffs
        assert np.max(np.abs(lhs - rhs)) <= 1e-13 * max(1, np.max(np.abs(lhs)))

    def test_against_monomial_derivative(self, rng):
        x = np.linspace(-1, 1, 20)
        for d in (3, 10, 20):
            mono = rng.uniform(-1, 1, d + 1)
            stored = npc.poly2cheb(mono)
            stored[0] *= 2
            got = eval_series(differentiate(ChebSeries(stored), 1), x)
            ref = np.polynomial.polynomial.polyval(x, np.polynomial.polynomial.polyder(mono))
            assert np.max(np.abs(got - ref)) <= 1e-11
