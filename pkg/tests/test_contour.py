import math

import mpmath

import numpy as np
import numpy.polynomial.chebyshev as npc
import pytest

from chebcontour import (
    ChebSeries,
    ContourPlan,
    Kind,
    batch_coeffs_t,
    batch_coeffs_u,
    coeff_t,
    coeff_u,
    exact_coeff,
    nodes,
    registry_lookup,
    t_to_u,
    to_series,
)
from chebcontour.contour import samples
from chebcontour.errors import AnalyticityError, EvaluationError, SamplingConditionError
from chebcontour.funcspace import AnalyticFn

from conftest import mp_exp_coeff, mp_pole_coeff, rel

EXP = registry_lookup("exp")
POLE2 = registry_lookup("pole", [2.0])


def poly_fn(stored):
    plain = np.array(stored, dtype=float)
    plain[0] *= 0.5
    return registry_lookup("poly", plain)


class TestPlan:
    @pytest.mark.parametrize("rho,m", [(0.99, 5), (math.inf, 5), (1.0, 0), (1.0, 2.5)])
    def test_invalid(self, rho, m):
        with pytest.raises(ValueError):
            ContourPlan(rho, m)

    def test_nodes_on_ellipse(self):
        p = ContourPlan(2.5, 40)
        z = nodes(p)
        a, b = (2.5 + 0.4) / 2, (2.5 - 0.4) / 2
        assert np.allclose((z.real / a) ** 2 + (z.imag / b) ** 2, 1.0, atol=1e-15)
        assert z[0] == a

    def test_nodes_rho_one_real(self):
        z = nodes(ContourPlan(1.0, 16))
        assert np.all(z.imag == 0)
        exact = np.array([float(mpmath.cos(2 * mpmath.pi * j / 16)) for j in range(16)])
        # formed in extended precision and rounded once
        assert np.max(np.abs(z.real - exact)) <= 1.2e-16


class TestCoeffT:
    def test_poly_T3(self):
        fn = poly_fn([0, 0, 0, 1])
        assert abs(coeff_t(fn, 3, ContourPlan(1.5, 7)).real - 1.0) <= 1e-13

    def test_exp_a0(self):
        assert abs(coeff_t(EXP, 0, ContourPlan(1.0, 64)).real - 2.5321317555040167) <= 1e-13

    def test_pole_a10(self):
        ref = mp_pole_coeff(10, 2)
        assert rel(coeff_t(POLE2, 10, ContourPlan(3.0, 202)).real, ref) <= 1e-12

    def test_sampling_condition(self):
        with pytest.raises(SamplingConditionError):
            coeff_t(EXP, 5, ContourPlan(1.0, 5))

    def test_analyticity(self):
        with pytest.raises(AnalyticityError):
            coeff_t(POLE2, 1, ContourPlan(3.8, 50))

    def test_nonfinite_sample(self):
        fn = AnalyticFn("bad", lambda z: 1.0 / (z - 1.0), rho_max=5.0)
        with np.errstate(divide="ignore", invalid="ignore"), pytest.raises(EvaluationError, match="node j=0"):
            coeff_t(fn, 0, ContourPlan(1.0, 8))

    def test_rho_independence(self):
        ref = mp_exp_coeff(5)
        for rho in (1, 1.5, 2, 5, 11):
            assert rel(coeff_t(EXP, 5, ContourPlan(rho, 64)).real, ref) <= 1e-10

    def test_real_coefficients(self):
        for fn in (EXP, POLE2, registry_lookup("rational4"), registry_lookup("exp2cos")):
            for n in range(0, 20, 3):
                assert coeff_t(fn, n, ContourPlan(1.7, 64)).imag_diagnostic <= 1e-13


class TestCoeffU:
    def test_poly_x(self):
        assert abs(coeff_u(poly_fn([0, 1]), 1, ContourPlan(1.2, 9)).real - 0.5) <= 1e-13

    def test_constant(self):
        assert abs(coeff_u(poly_fn([2]), 0, ContourPlan(1.5, 5)).real - 1.0) <= 1e-14

    def test_exp_b4(self):
        ref = 0.5 * (mp_exp_coeff(4) - mp_exp_coeff(6))
        assert rel(coeff_u(EXP, 4, ContourPlan(9.0, 64)).real, ref) <= 1e-12

    def test_sampling(self):
        with pytest.raises(SamplingConditionError):
            coeff_u(EXP, 3, ContourPlan(1.0, 5))

    def test_relation_to_first_kind(self):
        plan = ContourPlan(3.0, 128)
        for n in range(21):
            b = coeff_u(EXP, n, plan).real
            a = 0.5 * (coeff_t(EXP, n, plan).real - coeff_t(EXP, n + 2, plan).real)
            assert abs(a - b) <= 1e-13


class TestBatch:
    def test_exp_entry0(self):
        b = batch_coeffs_t(EXP, 50, ContourPlan(1.0, 101))
        assert abs(b[0].real - coeff_t(EXP, 0, ContourPlan(1.0, 101)).real) <= 1e-14
        assert len(b) == 51

    def test_pole_normalized(self):
        b = batch_coeffs_t(POLE2, 50, ContourPlan(3.0, 202))
        for r in b:
            assert 3.0**r.n * abs(r.real - mp_pole_coeff(r.n, 2)) <= 1e-12

    @pytest.mark.parametrize("name,params", [("exp", ()), ("pole", (2.0,)), ("rational_runge", ()), ("rational4", ()), ("exp2cos", ()), ("branch", (2.0, 0.5)), ("cos_affine", (2.0, 2.0))])
    def test_batch_equals_single(self, name, params):
        fn = registry_lookup(name, params)
        rho = min(2.0, 0.9 * fn.rho_max)
        plan = ContourPlan(rho, 90)
        b = batch_coeffs_t(fn, 40, plan)
        # both sums carry rounding errors of order eps * max|f(z_j)|, which is
        # the scale of rho^n |a_n| only where kappa is small
        scale = float(np.max(np.abs(samples(fn, plan))))
        for n in range(41):
            s = coeff_t(fn, n, plan).value
            assert abs(b[n].value - s) * rho**n <= 2e-15 * scale

    def test_poly_exact(self, rng):
        p = rng.uniform(-1, 1, 11)
        c = npc.poly2cheb(p)
        c[0] *= 2
        b = batch_coeffs_t(registry_lookup("monomial", p), 10, ContourPlan(2.0, 21))
        assert np.max(np.abs(np.array([r.real for r in b]) - c)) <= 1e-12

    def test_u_constant(self):
        b = batch_coeffs_u(poly_fn([2.0]), 0, ContourPlan(1.3, 5))
        assert abs(b[0].real - 1.0) <= 1e-14

    def test_u_matches_t_to_u(self):
        plan = ContourPlan(1.0, 101)
        t = to_series(batch_coeffs_t(EXP, 32, plan))
        u = batch_coeffs_u(EXP, 30, plan)
        conv = t_to_u(t).coeffs
        assert np.max(np.abs(np.array([r.real for r in u]) - conv[:31])) <= 1e-13

    def test_u_poly_exact(self, rng):
        c = npc.poly2cheb(rng.uniform(-1, 1, 9))
        c[0] *= 2
        fn = poly_fn(c)
        u = batch_coeffs_u(fn, 8, ContourPlan(1.5, 19))
        ref = t_to_u(ChebSeries(np.concatenate([c, [0, 0]]))).coeffs[:9]
        assert np.max(np.abs(np.array([r.real for r in u]) - ref)) <= 1e-12

    def test_to_series(self):
        s = to_series(batch_coeffs_t(EXP, 5, ContourPlan(1.0, 20)), Kind.FIRST)
        assert s.degree == 5
