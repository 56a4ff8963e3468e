"""Chebyshev coefficients of analytic functions from contour integrals.

Coefficients are trapezoidal-rule approximations of contour integrals
over Bernstein ellipses E_rho, either with one radius for all n (one FFT,
small absolute errors) or with a per-coefficient optimal radius (small
relative errors).
"""

from .chebcore import (
    ChebSeries,
    ExtrapolationWarning,
    Kind,
    differentiate,
    eval_series,
    inverse_joukowski,
    joukowski,
    t_to_u,
)
from .conditioning import (
    Auto,
    BranchLimit,
    ConditionEstimate,
    Entire,
    Fixed,
    NodeClass,
    Pole,
    kappa_t,
    kappa_u,
    m_of_rho,
    nodes_estimate,
    nodes_for_radius,
    optimal_coeffs,
    optimal_radius,
    plan_for,
    radius_auto,
)
from .contour import (
    CoeffResult,
    ContourPlan,
    batch_coeffs_t,
    batch_coeffs_u,
    coeff_t,
    coeff_u,
    nodes,
    to_series,
)
from .errors import (
    AnalyticityError,
    ChebDomainError,
    ChebError,
    ConvergenceError,
    EvaluationError,
    ExprDomainError,
    ExprError,
    ExprSyntaxError,
    InvalidSeriesError,
    KindMismatchError,
    NoOracleError,
    RegistryError,
    SamplingConditionError,
)
from .exprparse import eval_ast, expression_function, has_branch_cut, parse, to_source
from .funcspace import (
    AnalyticFn,
    OracleCoeff,
    Provenance,
    bessel_i,
    bessel_j,
    exact_coeff,
    exact_coeffs,
    monomial_to_cheb,
    oracle_coeff,
    registry_lookup,
    registry_names,
)
from .specops import (
    ColleagueMatrix,
    NoPolynomialError,
    RootSet,
    Strategy,
    bisection_roots,
    build_colleague,
    eigen_roots,
    roots_in_interval,
    roots_of_derivative,
    trim,
)

__version__ = "0.1.0"
