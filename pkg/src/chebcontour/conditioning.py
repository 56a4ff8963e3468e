"""Condition numbers of the contour integrals and optimal-radius rules.

The condition number of a_n on E_rho is

    kappa(n, rho) = M(rho) / (|a_n| rho^n),
    M(rho) = (1/pi) int_0^{2 pi} |f(z(rho e^{i theta}))| d theta,

and log M is increasing and convex in log rho, so log kappa is convex in
log rho and has a single minimiser, the optimal radius.
"""

from __future__ import annotations

import enum
import logging
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .contour import ContourPlan, CoeffResult, TWO_PI, coeff_t, coeff_u
from .errors import ChebDomainError

log = logging.getLogger(__name__)

LOG8 = 3.0 * math.log(2.0)
BRANCH_OFFSET = 1e-3


# ------------------------------------------------------------------ radius rules


@dataclass(frozen=True)
class Fixed:
    rho: float


@dataclass(frozen=True)
class Entire:
    """M(rho) ~ exp(mu rho^nu) rho^varsigma as rho -> inf."""

    mu: float
    nu: float
    varsigma: float

    def __post_init__(self):
        if not (self.mu > 0 and self.nu > 0):
            raise ValueError("Entire rule needs mu > 0 and nu > 0")


@dataclass(frozen=True)
class Pole:
    """Nearest singularity is a pole on the ellipse E_A.

    ``refined`` selects the variant with the log(A^2 +- 1) correction,
    slightly better for small A and n.
    """

    A: float
    refined: bool = False

    def __post_init__(self):
        if not self.A > 1:
            raise ValueError("Pole rule needs A > 1")


@dataclass(frozen=True)
class BranchLimit:
    rho_max: float
    offset: float = BRANCH_OFFSET


@dataclass(frozen=True)
class Auto:
    rho_max_hint: Optional[float] = None
    tolerance: float = 1e-3


RadiusRule = Union[Fixed, Entire, Pole, BranchLimit, Auto]


def optimal_radius(rule: RadiusRule, n: int, fn=None) -> float:
    """Contour radius rho*(n) prescribed by ``rule`` for coefficient n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(rule, Fixed):
        return float(rule.rho)
    if isinstance(rule, Entire):
        return max(1.0, ((n - rule.varsigma) / (rule.mu * rule.nu)) ** (1.0 / rule.nu))
    if isinstance(rule, Pole):
        A = rule.A
        if n == 0:
            return A * (1.0 - 1.0 / LOG8)
        denom = LOG8 + math.log(n)
        if rule.refined:
            denom += math.log(A * A - 1.0) - math.log(A * A + 1.0)
        return A * (1.0 - 1.0 / (n * denom))
    if isinstance(rule, BranchLimit):
        return (1.0 - rule.offset) * rule.rho_max
    if isinstance(rule, Auto):
        if fn is None:
            raise ValueError("the Auto rule needs the function")
        rho_max = rule.rho_max_hint if rule.rho_max_hint is not None else fn.rho_max
        return radius_auto(fn, n, rho_max, rule.tolerance)
    raise TypeError(f"unknown radius rule {rule!r}")


# ------------------------------------------------------------------ node counts


class NodeClass(enum.Enum):
    POLE_LIKE = "pole"
    ENTIRE_LIKE = "entire"


def nodes_estimate(n: int, eps: float, cls: NodeClass) -> int:
    """Trapezoidal node count for coefficient n at relative tolerance eps."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if cls is NodeClass.ENTIRE_LIKE:
        return max(2 * n + 2, 100)
    if n == 0:
        return 50
    return math.ceil(max(n * (LOG8 + math.log(n)) * math.log(1.0 / eps), 50))


def nodes_for_radius(n: int, rho: float, rho_max: float, eps: float) -> int:
    """Nodes keeping both aliased terms below eps relative to a_n.

    With coefficients decaying like rho_max^-k, the m-point rule adds
    a_{n+m} rho^m, of relative size (rho/rho_max)^m, and a_{m-n} rho^{-m},
    of relative size rho_max^{2n} (rho rho_max)^-m. Near rho_max the first
    bound is the pole heuristic; near rho = 1 the second forces m > 2n.
    """
    if math.isinf(rho_max):
        # entire functions of modest exponential type: a_k rho^k is negligible
        # once k exceeds a few times rho
        return max(2 * n + 2, 100, n + math.ceil(3.0 * rho))
    tail = math.log(1.0 / eps)
    upper = tail / math.log(rho_max / rho)
    lower = (tail + 2 * n * math.log(rho_max)) / math.log(rho_max * rho)
    return max(n + 1, 50, math.ceil(max(upper, lower)))


def node_class(rule, fn=None) -> NodeClass:
    if isinstance(rule, Entire):
        return NodeClass.ENTIRE_LIKE
    if isinstance(rule, (Pole, BranchLimit)):
        return NodeClass.POLE_LIKE
    if fn is not None and fn.entire:
        return NodeClass.ENTIRE_LIKE
    return NodeClass.POLE_LIKE


# ------------------------------------------------------------------ M(rho), kappa


@dataclass(frozen=True)
class ConditionEstimate:
    n: int
    rho: float
    m_rho: float
    kappa: float
    ref_coeff: float

    @property
    def zero_coefficient(self) -> bool:
        return self.ref_coeff == 0.0


def _check_rho(fn, rho):
    if not (rho >= 1.0 and rho < fn.rho_max):
        raise ChebDomainError(f"rho={rho} outside [1, rho_max={fn.rho_max}) for {fn.name}")


def _mean_modulus(fn, rho, q, second_kind):
    t = TWO_PI * np.arange(q) / q
    z = 0.5 * (rho + 1.0 / rho) * np.cos(t) + 0.5j * (rho - 1.0 / rho) * np.sin(t)
    g = np.abs(fn(z))
    if second_kind:
        g = g * np.abs(1.0 - np.exp(-2j * t) / rho**2)
    try:
        return math.fsum(g) / q
    except (OverflowError, ValueError):
        # |f| beyond the float range somewhere on the contour
        return math.inf


def _modulus_integral(fn, rho, q, second_kind, rtol, q_max):
    rho = float(rho)
    _check_rho(fn, rho)
    if q < 64:
        raise ValueError("need at least 64 quadrature nodes")
    value = _mean_modulus(fn, rho, q, second_kind)
    if not math.isfinite(value):
        return value
    # |f| is smooth only where f has no zeros on the contour; keep doubling
    # until two consecutive rules agree
    while q < q_max:
        q *= 2
        finer = _mean_modulus(fn, rho, q, second_kind)
        done = abs(finer - value) <= rtol * abs(finer)
        value = finer
        if done:
            break
    return value


def m_of_rho(fn, rho: float, q: int = 1024, rtol: float = 1e-10, q_max: int = 2**18) -> float:
    """Mean modulus M(rho) = (1/pi) int |f| d theta along E_rho.

    Starts with the q-point trapezoidal rule and doubles q until two
    successive values agree to ``rtol`` (or ``q_max`` is reached).
    """
    return 2.0 * _modulus_integral(fn, rho, q, False, rtol, q_max)


def weighted_m_of_rho(fn, rho: float, q: int = 1024, rtol: float = 1e-10, q_max: int = 2**18) -> float:
    """(1/2 pi) int |f (1 - u^-2)| d theta, the numerator of the second-kind kappa."""
    return _modulus_integral(fn, rho, q, True, rtol, q_max)


def _kappa(n, rho, numer, ref):
    ref = abs(float(ref))
    if ref == 0.0:
        return ConditionEstimate(n, rho, numer, math.inf, 0.0)
    # rho^n can overflow for large n; combine in logs
    lk = math.log(numer) - math.log(ref) - n * math.log(rho) if numer > 0 else -math.inf
    kappa = math.exp(lk) if lk < 709.0 else math.inf
    return ConditionEstimate(n, rho, numer, kappa, ref)


def kappa_t(fn, n: int, rho: float, ref: float, q: int = 1024) -> ConditionEstimate:
    """First-kind condition number M(rho)/(|ref| rho^n).

    ``ref`` is the exact (or best available) a_n. A zero reference yields
    ``kappa = inf`` with ``zero_coefficient`` set.
    """
    return _kappa(n, float(rho), m_of_rho(fn, rho, q), ref)


def kappa_u(fn, n: int, rho: float, ref: float, q: int = 1024) -> ConditionEstimate:
    """Second-kind condition number with the |1 - u^-2| weighted numerator."""
    return _kappa(n, float(rho), weighted_m_of_rho(fn, rho, q), ref)


# ------------------------------------------------------------------ automatic radius

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_RHO_CAP = 1e6


def _golden(f, a, b, tol):
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def radius_auto(fn, n: int, rho_max: Optional[float] = None, tol: float = 1e-3, q: int = 1024) -> float:
    """Numerically optimal radius by golden-section search on log kappa.

    Minimises log M(rho) - n log rho over log rho; the |a_n| in kappa does
    not move the minimiser, so a single probe coefficient is computed only
    to detect underflow. Returns rho with |log rho - log rho_opt| <= tol.
    """
    rho_max = fn.rho_max if rho_max is None else float(rho_max)
    if not rho_max > 1.0:
        raise ValueError("rho_max must exceed 1")

    def objective(x):
        # M overflows for entire functions at large rho; +inf stops the bracket growth
        with np.errstate(over="ignore", invalid="ignore"):
            M = m_of_rho(fn, math.exp(x), q)
        if not math.isfinite(M):
            return math.inf
        return math.log(M) - n * x

    if math.isinf(rho_max):
        lo, hi = math.log(1.1), math.log(max(4.0 * n + 4.0, 8.0))
        f_hi = objective(hi)
        while hi + math.log(2.0) <= math.log(_RHO_CAP):
            f_next = objective(hi + math.log(2.0))
            if f_next >= f_hi:
                break
            hi, f_hi = hi + math.log(2.0), f_next
    else:
        lo, hi = 0.0, math.log(rho_max) - BRANCH_OFFSET

    mid = 0.5 * (lo + hi)
    probe = coeff_t(fn, n, ContourPlan(math.exp(mid), 4 * n + 64))
    if abs(probe.value) < 1e-300:
        warnings.warn(f"probe coefficient a_{n} underflows; returning bracket end", RuntimeWarning)
        return math.exp(hi)

    f_lo, f_mid, f_hi = objective(lo), objective(mid), objective(hi)
    spread = max(f_lo, f_mid, f_hi) - min(f_lo, f_mid, f_hi)
    if spread <= 1e-12 * max(1.0, abs(f_mid)):
        return math.exp(mid)
    x = _golden(objective, lo, hi, tol)
    log.debug("radius_auto n=%d bracket=[%g, %g] -> rho=%g", n, math.exp(lo), math.exp(hi), math.exp(x))
    return math.exp(x)


# ------------------------------------------------------------------ per-coefficient strategy


def _threads() -> int:
    try:
        return max(0, int(os.environ.get("CHEB_THREADS", "0")))
    except ValueError:
        return 0


def plan_for(fn, n: int, rule=None, m: Optional[int] = None, eps: float = 1e-14, extra: int = 0) -> ContourPlan:
    """Contour plan for coefficient n: radius from the rule, nodes from the heuristics.

    An explicit ``m`` is raised to n + 1 + extra where needed so the
    sampling condition holds.
    """
    rule = rule if rule is not None else (fn.radius_rule or Auto())
    rho = optimal_radius(rule, n, fn)
    if rho >= fn.rho_max:
        rho = (1.0 - BRANCH_OFFSET) * fn.rho_max
    if m is None:
        cls = node_class(rule, fn)
        m = nodes_estimate(n, eps, cls)
        if cls is NodeClass.POLE_LIKE and not isinstance(rule, Pole):
            m = max(m, nodes_for_radius(n, rho, fn.rho_max, eps))
    return ContourPlan(rho, max(int(m), n + 1 + extra))


def optimal_coeffs(fn, N: int, rule=None, m: Optional[int] = None, eps: float = 1e-14, second_kind: bool = False) -> list[CoeffResult]:
    """Coefficients 0..N, each on its own optimal contour.

    Computation runs on ``CHEB_THREADS`` worker threads when that variable
    is a positive integer; results are always ordered by n.
    """
    extra = 2 if second_kind else 0
    single = coeff_u if second_kind else coeff_t

    def one(n):
        return single(fn, n, plan_for(fn, n, rule, m, eps, extra))

    workers = _threads()
    if workers > 0:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(N + 1)))
    return [one(n) for n in range(N + 1)]
