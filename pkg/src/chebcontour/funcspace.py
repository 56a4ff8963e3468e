"""Analytic test functions, their analyticity data and exact coefficients.

Every function in the registry is real on [-1, 1] and is evaluated on
complex arrays. ``rho_max`` is the largest Bernstein-ellipse parameter
inside which the function is analytic (``inf`` for entire functions).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .chebcore import ChebSeries, differentiate, eval_series, _clenshaw, Kind
from .conditioning import BranchLimit, Entire, Fixed, Pole, RadiusRule
from .errors import ChebDomainError, NoOracleError, RegistryError


class Provenance(enum.Enum):
    CLOSED_FORM = "closed-form"
    BESSEL_SERIES = "bessel-series"


@dataclass(frozen=True)
class OracleCoeff:
    n: int
    value: float
    provenance: Provenance


@dataclass(frozen=True, eq=False)
class AnalyticFn:
    """A function analytic in a neighbourhood of [-1, 1].

    Attributes
    ----------
    name : str
        Registry name or source expression.
    func : callable
        Vectorised map from complex ndarray to complex ndarray.
    rho_max : float
        Supremum of rho with f analytic inside the Bernstein ellipse E_rho.
    radius_rule : RadiusRule or None
        Rule giving the optimal contour radius for coefficient n.
    oracle : callable or None
        ``oracle(n) -> OracleCoeff`` with the exact first-kind coefficient.
    derivative : callable or None
        ``derivative(x, s)`` giving the exact s-th derivative on real x.
    branch_cut : bool
        The function carries a non-integer power; only fixed or automatic
        radius rules apply.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    rho_max: float = math.inf
    radius_rule: Optional[RadiusRule] = None
    oracle: Optional[Callable[[int], OracleCoeff]] = field(default=None, repr=False)
    derivative: Optional[Callable[[np.ndarray, int], np.ndarray]] = field(default=None, repr=False)
    branch_cut: bool = False
    params: tuple = ()

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.asarray(self.func(z), dtype=complex)
        if out.shape != z.shape:
            out = np.broadcast_to(out, z.shape).copy()
        return out

    @property
    def entire(self) -> bool:
        return math.isinf(self.rho_max)


def ellipse_parameter(z0) -> float:
    """Parameter rho of the Bernstein ellipse through the point z0.

    Equals |z0 ± sqrt(z0^2 - 1)| with the sign giving a value >= 1.
    """
    z0 = complex(z0)
    s = np.sqrt(z0 - 1.0) * np.sqrt(z0 + 1.0)
    return float(max(abs(z0 + s), abs(z0 - s)))


# ---------------------------------------------------------------- Bessel series

_MAX_TERMS = 400


def _check_index(n):
    if int(n) != n or n < 0:
        raise ChebDomainError(f"Bessel order must be a non-negative integer, got {n}")
    return int(n)


@lru_cache(maxsize=4096)
def _bessel_series(n: int, x: float, sign: int) -> float:
    # Every float is an exact rational, so the terms (x/2)^(n+2m) / (m!(n+m)!)
    # are summed exactly and rounded once at the end.
    half = Fraction(x) / 2
    q = sign * half * half
    term = half**n / math.factorial(n)
    total = term
    if term == 0:
        return 0.0
    for m in range(1, _MAX_TERMS):
        term = term * q / (m * (n + m))
        total += term
        if abs(term) < Fraction(1, 10**18) * abs(total):
            break
    return float(total)


def bessel_i(n: int, x: float) -> float:
    """Modified Bessel function I_n(x) from its ascending series, 0 <= x <= 50."""
    n = _check_index(n)
    x = float(x)
    if not 0.0 <= x <= 50.0:
        raise ChebDomainError(f"bessel_i needs 0 <= x <= 50, got {x}")
    return _bessel_series(n, x, 1)


def bessel_j(n: int, x: float) -> float:
    """Bessel function J_n(x) from its alternating ascending series, |x| <= 20."""
    n = _check_index(n)
    x = float(x)
    if not abs(x) <= 20.0:
        raise ChebDomainError(f"bessel_j needs |x| <= 20, got {x}")
    return _bessel_series(n, x, -1)


# ----------------------------------------------------------- monomial -> Chebyshev


def monomial_to_cheb(p: Sequence[float]) -> np.ndarray:
    """Plain Chebyshev coefficients c with sum_k p_k x^k = sum_k c_k T_k(x).

    Builds x^k in the Chebyshev basis with x T_k = (T_{k+1} + T_{|k-1|})/2.
    """
    p = [float(v) for v in p]
    d = len(p) - 1
    out = np.zeros(d + 1)
    power = np.zeros(d + 2)
    power[0] = 1.0
    for k, pk in enumerate(p):
        out[: k + 1] += pk * power[: k + 1]
        nxt = np.zeros(d + 2)
        for j in range(k + 1):
            cj = power[j]
            if cj == 0.0:
                continue
            if j + 1 <= d + 1:
                nxt[j + 1] += 0.5 * cj
            nxt[abs(j - 1)] += 0.5 * cj
        power = nxt
    return out


# ---------------------------------------------------------------- registry


def _exp_oracle(n):
    return OracleCoeff(n, 2.0 * bessel_i(n, 1.0), Provenance.BESSEL_SERIES)


def _make_exp():
    return AnalyticFn(
        "exp",
        np.exp,
        math.inf,
        Entire(mu=0.5, nu=1.0, varsigma=-0.5),
        _exp_oracle,
        lambda x, s: np.exp(x),
    )


def _make_cos_affine(c, d):
    if not c > 0:
        raise RegistryError(f"cos_affine needs c > 0, got {c}")
    if c > 20:
        raise RegistryError("cos_affine oracle needs c <= 20")

    def oracle(n):
        # cos(d + n pi/2) with the quarter turns reduced exactly
        r = n % 4
        trig = (math.cos(d), -math.sin(d), -math.cos(d), math.sin(d))[r]
        return OracleCoeff(n, 2.0 * trig * bessel_j(n, c), Provenance.BESSEL_SERIES)

    return AnalyticFn(
        f"cos_affine({c!r},{d!r})",
        lambda z: np.cos(c * z + d),
        math.inf,
        Entire(mu=c / 2.0, nu=1.0, varsigma=-0.5),
        oracle,
        lambda x, s: c**s * np.cos(c * np.asarray(x) + d + s * np.pi / 2),
        params=(c, d),
    )


def _make_pole(a):
    if not a > 1:
        raise RegistryError(f"pole(a) needs a > 1, got {a}")
    root = math.sqrt(a * a - 1.0)
    A = a + root
    ratio = 1.0 / A  # a - sqrt(a^2-1) without cancellation

    def oracle(n):
        return OracleCoeff(n, -2.0 / root * ratio**n, Provenance.CLOSED_FORM)

    def deriv(x, s):
        return (-1.0) ** s * math.factorial(s) / (np.asarray(x) - a) ** (s + 1)

    return AnalyticFn(
        f"pole({a!r})",
        lambda z: 1.0 / (z - a),
        A,
        Pole(A),
        oracle,
        deriv,
        params=(a,),
    )


def _pair_oracle(residue, z0):
    # 1/(x - z0) = sum' a_n T_n with a_n = -2 u^-n / (u - z0), u = u(z0), |u| > 1
    s = np.sqrt(complex(z0) - 1.0) * np.sqrt(complex(z0) + 1.0)
    u = z0 + s if abs(z0 + s) >= abs(z0 - s) else z0 - s
    lead = -2.0 * residue / (u - z0)

    def oracle(n):
        return OracleCoeff(n, 2.0 * (lead * u ** (-n)).real, Provenance.CLOSED_FORM)

    return oracle


def _pair_derivative(residue, z0):
    # residue/(x - z0) + conj(residue)/(x - conj z0)
    def deriv(x, s):
        x = np.asarray(x, dtype=float)
        term = residue * (-1.0) ** s * math.factorial(s) / (x - z0) ** (s + 1)
        return 2.0 * term.real

    return deriv


def _make_rational_runge():
    A = ellipse_parameter(1j)
    return AnalyticFn(
        "rational_runge",
        lambda z: (z + 1.0) / (z * z + 1.0),
        A,
        Pole(A),
        # (x+1)/(x^2+1) = r/(x-i) + conj(r)/(x+i), r = (1+i)/(2i)
        _pair_oracle((1 + 1j) / 2j, 1j),
        _pair_derivative((1 + 1j) / 2j, 1j),
    )


def _make_rational4():
    A = ellipse_parameter(2j)
    return AnalyticFn(
        "rational4",
        lambda z: (z + 1.0) / (z * z + 4.0),
        A,
        Pole(A),
        _pair_oracle((1 + 2j) / 4j, 2j),
        _pair_derivative((1 + 2j) / 4j, 2j),
    )


def _make_branch(c, phi):
    if not c > 1:
        raise RegistryError(f"branch(c, phi) needs c > 1, got {c}")
    A = c + math.sqrt(c * c - 1.0)
    return AnalyticFn(
        f"branch({c!r},{phi!r})",
        lambda z: np.exp(phi * np.log(c - z)),
        A,
        BranchLimit(A),
        None,
        None,
        branch_cut=float(phi) != int(phi),
        params=(c, phi),
    )


def _make_exp2cos():
    return AnalyticFn(
        "exp2cos",
        lambda z: np.exp(2.0 * z) + np.cos(2.0 * z + 3.0),
        math.inf,
        Entire(mu=1.0, nu=1.0, varsigma=-0.5),
        None,
        lambda x, s: 2.0**s * (np.exp(2.0 * np.asarray(x)) + np.cos(2.0 * np.asarray(x) + 3.0 + s * np.pi / 2)),
    )


def _poly_from_cheb(plain, name, params):
    plain = np.asarray(plain, dtype=float)
    stored = plain.copy()
    stored[0] *= 2.0
    series = ChebSeries(stored)

    def oracle(n):
        v = stored[n] if n < stored.size else 0.0
        return OracleCoeff(n, float(v), Provenance.CLOSED_FORM)

    def deriv(x, s):
        return eval_series(differentiate(series, s), x)

    return AnalyticFn(
        name,
        lambda z: _clenshaw(stored, z, Kind.FIRST),
        math.inf,
        Fixed(1.0),
        oracle,
        deriv,
        params=tuple(params),
    )


def _make_poly(*coeffs):
    if not coeffs:
        raise RegistryError("poly needs at least one coefficient")
    return _poly_from_cheb(coeffs, "poly(" + ",".join(repr(c) for c in coeffs) + ")", coeffs)


def _make_monomial(*coeffs):
    if not coeffs:
        raise RegistryError("monomial needs at least one coefficient")
    return _poly_from_cheb(
        monomial_to_cheb(coeffs), "monomial(" + ",".join(repr(c) for c in coeffs) + ")", coeffs
    )


# name -> (factory, allowed parameter counts; None means variadic >= 1)
_REGISTRY = {
    "exp": (_make_exp, (0,)),
    "cos_affine": (_make_cos_affine, (2,)),
    "cos": (lambda c=1.0, d=0.0: _make_cos_affine(c, d), (0, 1, 2)),
    "pole": (_make_pole, (1,)),
    "rational_runge": (_make_rational_runge, (0,)),
    "rational4": (_make_rational4, (0,)),
    "branch": (_make_branch, (2,)),
    "exp2cos": (_make_exp2cos, (0,)),
    "poly": (_make_poly, None),
    "monomial": (_make_monomial, None),
}


def registry_names():
    return sorted(_REGISTRY)


def registry_lookup(name: str, params: Sequence[float] = ()) -> AnalyticFn:
    """Build a registry function by name.

    ``poly`` takes plain Chebyshev coefficients (p = sum c_k T_k);
    ``monomial`` takes power-basis coefficients p_0, p_1, ...;
    ``cos`` is ``cos_affine`` with defaults c = 1, d = 0.
    """
    try:
        factory, arity = _REGISTRY[name]
    except KeyError:
        raise RegistryError(f"unknown function '{name}'; known: {', '.join(registry_names())}") from None
    params = tuple(float(p) for p in params)
    if not all(math.isfinite(p) for p in params):
        raise RegistryError("parameters must be finite")
    if arity is not None and len(params) not in arity:
        raise RegistryError(f"'{name}' takes {' or '.join(map(str, arity))} parameter(s), got {len(params)}")
    return factory(*params)


def oracle_coeff(fn: AnalyticFn, n: int) -> OracleCoeff:
    if fn.oracle is None:
        raise NoOracleError(f"no exact coefficients known for {fn.name}")
    if n < 0:
        raise ValueError("coefficient index must be non-negative")
    return fn.oracle(int(n))


def exact_coeff(fn: AnalyticFn, n: int) -> float:
    """Exact first-kind coefficient a_n (halved-first-term convention)."""
    return oracle_coeff(fn, n).value


def exact_coeffs(fn: AnalyticFn, N: int) -> np.ndarray:
    return np.array([exact_coeff(fn, n) for n in range(N + 1)])
