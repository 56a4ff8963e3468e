"""Roots of Chebyshev series through the colleague matrix.

The roots of p(x) = sum_{k=0}^n c_k T_k(x), c_n != 0, are the eigenvalues
of the colleague matrix: the tridiagonal matrix of the three-term
recurrence x T_k = (T_{k+1} + T_{k-1})/2 with last row corrected by
-c_k/(2 c_n).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .chebcore import ChebSeries, Kind, _clenshaw, differentiate
from .contour import ContourPlan, batch_coeffs_t, to_series
from .errors import ChebError, ConvergenceError, InvalidSeriesError, KindMismatchError


class NoPolynomialError(ChebError, ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ColleagueMatrix:
    matrix: np.ndarray

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class RootSet:
    """Real roots on (a slightly widened) [-1, 1], sorted ascending."""

    roots: np.ndarray
    residuals: np.ndarray
    discarded: int = 0
    everywhere_zero: bool = False
    degree: int = 0

    def __len__(self):
        return self.roots.size


def trim(series: ChebSeries, trim_rel: float = 1e-13) -> ChebSeries:
    """Drop trailing coefficients with |c_k| <= trim_rel * max|c|."""
    c = series.coeffs
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return ChebSeries([0.0], series.kind)
    keep = np.flatnonzero(np.abs(c) > trim_rel * scale)
    return ChebSeries(c[: keep[-1] + 1], series.kind)


def build_colleague(series: ChebSeries) -> ColleagueMatrix:
    """Colleague matrix of a first-kind series (stored a_0 is halved first)."""
    if series.kind is not Kind.FIRST:
        raise KindMismatchError("colleague matrix needs a first-kind series")
    c = series.plain_coeffs()
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise NoPolynomialError("the zero series has no colleague matrix")
    c = c[: nz[-1] + 1]
    n = c.size - 1
    if n < 1:
        raise NoPolynomialError("a nonzero constant has no roots")
    if n == 1:
        # x T_0 = T_1 carries weight 1, not 1/2
        return ColleagueMatrix(np.array([[-c[0] / c[1]]]))
    A = np.zeros((n, n))
    A[0, 1] = 1.0
    idx = np.arange(1, n - 1)
    A[idx, idx - 1] = 0.5
    A[idx, idx + 1] = 0.5
    A[n - 1, n - 2] = 0.5
    A[n - 1, :] -= c[:n] / (2.0 * c[n])
    return ColleagueMatrix(A)


def eigen_roots(matrix: ColleagueMatrix) -> np.ndarray:
    """All eigenvalues of the colleague matrix (LAPACK geev: balance, Hessenberg, QR)."""
    A = matrix.matrix
    if not np.all(np.isfinite(A)):
        raise InvalidSeriesError("colleague matrix has non-finite entries")
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration failed to converge: {exc}") from exc


def roots_in_interval(
    series: ChebSeries,
    imag_tol: float = 1e-8,
    interval_tol: float = 1e-8,
    trim_rel: float = 1e-13,
) -> RootSet:
    """Real roots of a first-kind series on [-1 - interval_tol, 1 + interval_tol].

    Eigenvalues with |Im| > imag_tol or real part outside the widened
    interval are counted in ``discarded``.
    """
    if series.kind is not Kind.FIRST:
        raise KindMismatchError("roots_in_interval needs a first-kind series")
    empty = np.zeros(0)
    if not np.any(series.coeffs):
        return RootSet(empty, empty, 0, everywhere_zero=True)
    t = trim(series, trim_rel)
    if t.degree == 0:
        return RootSet(empty, empty, 0, degree=0)
    lam = eigen_roots(build_colleague(t))
    keep = (np.abs(lam.imag) <= imag_tol) & (np.abs(lam.real) <= 1.0 + interval_tol)
    r = np.sort(lam[keep].real)
    res = np.abs(_clenshaw(series.coeffs, r, Kind.FIRST))
    return RootSet(r, res, int(lam.size - r.size), degree=t.degree)


class Strategy(enum.Enum):
    OPTIMAL_RADIUS = "optimal"
    FIXED_RHO = "fixed"


def roots_of_derivative(
    fn,
    s: int,
    N: int,
    strategy: Strategy = Strategy.OPTIMAL_RADIUS,
    rho: float = 1.0,
    m: Optional[int] = None,
    eps: float = 1e-14,
    rule=None,
    **opts,
) -> RootSet:
    """Roots on [-1, 1] of the s-th derivative of the degree-N expansion of fn.

    With ``OPTIMAL_RADIUS`` each a_k uses its own contour (``m`` nodes, or
    the node heuristics when ``m`` is None); with ``FIXED_RHO`` one FFT on
    the radius ``rho`` with ``m`` (default 2N + 2) nodes gives all of them.
    ``rule`` overrides the function's radius rule for ``OPTIMAL_RADIUS``.
    """
    from .conditioning import optimal_coeffs

    if s < 0 or s > N:
        raise ValueError(f"derivative order must lie in [0, N={N}], got {s}")
    if strategy is Strategy.OPTIMAL_RADIUS:
        res = optimal_coeffs(fn, N, rule=rule, m=m, eps=eps)
    else:
        res = batch_coeffs_t(fn, N, ContourPlan(rho, m if m is not None else 2 * N + 2))
    return roots_in_interval(differentiate(to_series(res), s), **opts)


def bisection_roots(g, a: float = -1.0, b: float = 1.0, samples: int = 4001) -> np.ndarray:
    """Sign-change roots of a real function on [a, b] by plain bisection.

    Independent of the colleague-matrix route, used as a reference. Only
    roots of odd multiplicity separated by more than the sampling step are
    found; exact zeros on the sampling grid are returned as they are.
    """
    x = np.linspace(a, b, samples)
    y = np.asarray(g(x), dtype=float)
    out = list(x[y == 0.0])
    for i in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0):
        lo, hi, flo = x[i], x[i + 1], y[i]
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            fm = float(g(np.array([mid]))[0])
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
    return np.sort(np.array(out, dtype=float))
