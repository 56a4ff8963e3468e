"""Chebyshev series on [-1, 1]: evaluation, kind conversion, differentiation.

First-kind series are stored with the halved-first-term convention,

    f(x) = a_0/2 + sum_{k>=1} a_k T_k(x),

so the stored coefficients are exactly the values delivered by the contour
integrals. Second-kind series carry no halving: f(x) = sum_k b_k U_k(x).
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ChebDomainError, InvalidSeriesError, KindMismatchError


class Kind(enum.Enum):
    FIRST = "T"
    SECOND = "U"


class ExtrapolationWarning(UserWarning):
    """A series was evaluated at a real point outside [-1, 1]."""


@dataclass(frozen=True, eq=False)
class ChebSeries:
    """Immutable Chebyshev expansion of the first (T) or second (U) kind.

    Parameters
    ----------
    coeffs : array_like
        Real coefficients, index k multiplying the degree-k polynomial.
        For ``Kind.FIRST`` the entry at index 0 is halved on evaluation.
    kind : Kind
    """

    coeffs: np.ndarray
    kind: Kind = Kind.FIRST

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            raise InvalidSeriesError("coefficient vector is empty")
        if not np.all(np.isfinite(c)):
            raise InvalidSeriesError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __call__(self, x):
        return eval_series(self, x)

    def __eq__(self, other):
        if not isinstance(other, ChebSeries):
            return NotImplemented
        return self.kind is other.kind and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"ChebSeries({self.coeffs.tolist()!r}, kind={self.kind.name})"

    def plain_coeffs(self) -> np.ndarray:
        """Coefficients c_k of sum_k c_k P_k, i.e. with the halving applied."""
        c = self.coeffs.copy()
        if self.kind is Kind.FIRST:
            c[0] *= 0.5
        return c


def _clenshaw(c, x, kind):
    # backward recurrence b_k = c_k + 2x b_{k+1} - b_{k+2}
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for ck in c[:0:-1]:
        b1, b2 = ck + 2.0 * x * b1 - b2, b1
    if kind is Kind.FIRST:
        return 0.5 * c[0] + x * b1 - b2
    return c[0] + 2.0 * x * b1 - b2


def eval_series(series: ChebSeries, x):
    """Evaluate a Chebyshev series by Clenshaw's recurrence.

    ``x`` may be a scalar or an array, real or complex. Real points outside
    [-1, 1] are evaluated but trigger an :class:`ExtrapolationWarning`.
    """
    if len(series.coeffs) == 0:
        raise InvalidSeriesError("coefficient vector is empty")
    xa = np.asarray(x)
    if not np.iscomplexobj(xa):
        xa = xa.astype(float)
        if np.any(np.abs(xa) > 1.0):
            warnings.warn("evaluating outside [-1, 1]", ExtrapolationWarning, stacklevel=2)
    out = _clenshaw(series.coeffs, xa, series.kind)
    if np.ndim(out) == 0:
        return out.item()
    return out


def joukowski(u):
    """Joukowski map z = (u + 1/u)/2 taking |u| = rho onto the Bernstein ellipse."""
    u = np.asarray(u, dtype=complex)
    if np.any(u == 0):
        raise ChebDomainError("joukowski map undefined at u = 0")
    z = 0.5 * (u + 1.0 / u)
    return z.item() if z.ndim == 0 else z


def inverse_joukowski(z):
    """Inverse Joukowski map, choosing the branch with |u| >= 1.

    For z on [-1, 1] the two branches have equal modulus 1 and the one with
    non-negative imaginary part is returned.
    """
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise ChebDomainError("inverse_joukowski needs finite input")
    # sqrt(z-1)*sqrt(z+1) has its cut on [-1, 1] only, so the branch is
    # continuous on the exterior; z^2-1 under one sqrt would cut the imaginary axis.
    s = np.sqrt(z - 1.0) * np.sqrt(z + 1.0)
    u = z + s
    w = z - s
    flip = np.abs(w) > np.abs(u)
    u = np.where(flip, w, u)
    on_cut = (z.imag == 0) & (np.abs(z.real) <= 1.0)
    u = np.where(on_cut & (u.imag < 0), np.conj(u), u)
    return u.item() if u.ndim == 0 else u


def t_to_u(series: ChebSeries) -> ChebSeries:
    """Convert a first-kind series to second kind via b_n = (a_n - a_{n+2})/2.

    The relation is applied to the stored (unhalved) a_n, which is correct
    for n = 0 because T_0 = U_0 and the halving of a_0 cancels the 1/2.
    """
    if series.kind is not Kind.FIRST:
        raise KindMismatchError("t_to_u expects a first-kind series")
    a = series.coeffs
    shifted = np.zeros_like(a)
    shifted[:-2] = a[2:]
    return ChebSeries(0.5 * (a - shifted), Kind.SECOND)


def differentiate(series: ChebSeries, s: int = 1) -> ChebSeries:
    """Coefficients of the s-th derivative of a first-kind series.

    Applies a^{(σ)}_{k-1} = a^{(σ)}_{k+1} + 2k a^{(σ-1)}_k for
    k = N-σ+1, ..., 1 and σ = 1, ..., s. Each pass drops one degree; when
    s exceeds the degree the zero series ``[0.0]`` is returned.
    """
    if series.kind is not Kind.FIRST:
        raise KindMismatchError("differentiate expects a first-kind series")
    s = int(s)
    if s < 0:
        raise ValueError("derivative order must be non-negative")
    N = series.degree
    if s == 0:
        return series
    if s > N:
        return ChebSeries([0.0])
    prev = series.coeffs.tolist()
    for sigma in range(1, s + 1):
        top = N - sigma + 1
        cur = [0.0] * (top + 2)
        for k in range(top, 0, -1):
            cur[k - 1] = cur[k + 1] + 2.0 * k * prev[k]
        prev = cur[:top]
    return ChebSeries(prev)
