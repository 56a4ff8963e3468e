"""Trapezoidal rule for the contour-integral Chebyshev coefficients.

With u_j = rho exp(2 pi i j/m) and z_j = (u_j + 1/u_j)/2 on the Bernstein
ellipse E_rho,

    a_n(m, rho) = 2/(m rho^n) sum_j f(z_j) exp(-2 pi i j n/m),
    b_n(m, rho) = 1/(m rho^n) sum_j f(z_j) (1 - u_j^-2) exp(-2 pi i j n/m).

The per-coefficient routines sum in ascending j with exactly rounded
summation (``math.fsum``); the batch routines use one FFT for all n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebcore import ChebSeries, Kind
from .errors import AnalyticityError, EvaluationError, SamplingConditionError

TWO_PI = 2.0 * math.pi
# pi - float(pi), to carry the node angles in extended precision
_PI_TAIL = 1.2246467991473532e-16


@dataclass(frozen=True)
class ContourPlan:
    """Radius ``rho >= 1`` of the u-plane circle and node count ``m >= 1``."""

    rho: float
    m: int

    def __post_init__(self):
        rho = float(self.rho)
        if not (math.isfinite(rho) and rho >= 1.0):
            raise ValueError(f"rho must be finite and >= 1, got {self.rho}")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class CoeffResult:
    n: int
    value: complex
    plan: ContourPlan

    @property
    def imag_diagnostic(self) -> float:
        return abs(self.value.imag) / max(1.0, abs(self.value.real))

    @property
    def real(self) -> float:
        return self.value.real


def angles(m: int) -> np.ndarray:
    return TWO_PI * np.arange(m) / m


def _unit_phase(k: np.ndarray, m: int) -> np.ndarray:
    # exp(-2 pi i k/m) with k reduced mod m first so the angle stays in [0, 2 pi)
    t = TWO_PI * (np.mod(k, m) / m)
    return np.cos(t) - 1j * np.sin(t)


def nodes(plan: ContourPlan) -> np.ndarray:
    """Points z_j on the Bernstein ellipse E_rho, j = 0..m-1.

    Formed in extended precision (where the platform has it) and rounded
    once, so each node carries a single rounding error.
    """
    ld = np.longdouble
    j = np.arange(plan.m, dtype=ld)
    t = (2 * ld(np.pi) + ld(_PI_TAIL) * 2) * j / plan.m
    rho = ld(plan.rho)
    re = (rho + 1 / rho) / 2 * np.cos(t)
    im = (rho - 1 / rho) / 2 * np.sin(t)
    return re.astype(float) + 1j * im.astype(float)


def _check(fn, n, plan, extra):
    if plan.m <= n + extra:
        need = "m > n" if extra == 0 else f"m > n + {extra}"
        raise SamplingConditionError(f"sampling condition {need} violated (n={n}, m={plan.m})")
    if plan.rho >= fn.rho_max:
        raise AnalyticityError(
            f"rho={plan.rho} reaches the singularity of {fn.name} (rho_max={fn.rho_max})"
        )


def samples(fn, plan: ContourPlan) -> np.ndarray:
    """f at the contour nodes; raises EvaluationError on a non-finite value."""
    g = fn(nodes(plan))
    bad = ~np.isfinite(g)
    if np.any(bad):
        j = int(np.flatnonzero(bad)[0])
        raise EvaluationError(
            f"{fn.name} is not finite at node j={j} (theta={TWO_PI * j / plan.m!r}) on rho={plan.rho}"
        )
    return g


def _second_kind_weight(plan: ContourPlan) -> np.ndarray:
    # 1 - u_j^-2 = 1 - rho^-2 exp(-4 pi i j/m)
    return 1.0 - _unit_phase(2 * np.arange(plan.m), plan.m) / plan.rho**2


def _fsum_complex(v: np.ndarray) -> complex:
    return complex(math.fsum(v.real), math.fsum(v.imag))


def _divide_power(v, rho, n):
    """v / rho**n without overflowing rho**n; n may be an integer array."""
    n = np.asarray(n)
    if rho == 1.0:
        return v
    # largest power of rho that stays well inside the float range
    step = max(1, int(600.0 / math.log2(rho)))
    left = n.copy() if n.ndim else int(n)
    out = v
    while np.any(left > 0):
        k = np.minimum(left, step)
        out = out / np.power(rho, k.astype(float) if np.ndim(k) else float(k))
        left = left - k
    return out


def _single(g, n, plan, scale):
    terms = g * _unit_phase(np.arange(plan.m) * n, plan.m)
    return complex(_divide_power(_fsum_complex(terms) * (scale / plan.m), plan.rho, n))


def coeff_t(fn, n: int, plan: ContourPlan) -> CoeffResult:
    """First-kind coefficient a_n by the m-point trapezoidal rule on E_rho."""
    n = int(n)
    _check(fn, n, plan, 0)
    return CoeffResult(n, _single(samples(fn, plan), n, plan, 2.0), plan)


def coeff_u(fn, n: int, plan: ContourPlan) -> CoeffResult:
    """Second-kind coefficient b_n; needs m > n + 2."""
    n = int(n)
    _check(fn, n, plan, 2)
    g = samples(fn, plan) * _second_kind_weight(plan)
    return CoeffResult(n, _single(g, n, plan, 1.0), plan)


def _batch(g, N, plan, scale):
    bins = np.fft.fft(g)[: N + 1]
    n = np.arange(N + 1)
    vals = _divide_power(bins * (scale / plan.m), plan.rho, n)
    return [CoeffResult(int(k), complex(v), plan) for k, v in zip(n, vals)]


def batch_coeffs_t(fn, N: int, plan: ContourPlan) -> list[CoeffResult]:
    """a_0..a_N on one contour with a single FFT of the samples."""
    N = int(N)
    _check(fn, N, plan, 0)
    return _batch(samples(fn, plan), N, plan, 2.0)


def batch_coeffs_u(fn, N: int, plan: ContourPlan) -> list[CoeffResult]:
    """b_0..b_N on one contour with a single FFT of the weighted samples."""
    N = int(N)
    _check(fn, N, plan, 2)
    return _batch(samples(fn, plan) * _second_kind_weight(plan), N, plan, 1.0)


def to_series(results, kind: Kind = Kind.FIRST) -> ChebSeries:
    """Real parts of a coefficient list as a ChebSeries."""
    return ChebSeries([r.value.real for r in results], kind)
