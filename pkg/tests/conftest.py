import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 40


def mp_exp_coeff(n):
    """2 I_n(1) from mpmath, independent of the package's Bessel series."""
    return float(2 * mpmath.besseli(n, 1))


def mp_cos_coeff(n, c, d):
    return float(2 * mpmath.cos(d + n * mpmath.pi / 2) * mpmath.besselj(n, c))


def mp_pole_coeff(n, a):
    a = mpmath.mpf(a)
    r = mpmath.sqrt(a * a - 1)
    return float(-2 / r * (a - r) ** n)


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
