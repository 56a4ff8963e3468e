"""Table builders behind the command line, and the reproduction runs.

Each builder returns ``(columns, rows)`` with rows as tuples in column
order, so output formatting stays in one place (:mod:`chebcontour.cli`).
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .chebcore import Kind, _clenshaw, differentiate
from .conditioning import (
    Auto,
    kappa_t,
    kappa_u,
    nodes_estimate,
    nodes_for_radius,
    NodeClass,
    optimal_coeffs,
    plan_for,
)
from .contour import ContourPlan, batch_coeffs_t, batch_coeffs_u, coeff_t, coeff_u, to_series
from .funcspace import exact_coeff, registry_lookup
from .specops import Strategy, bisection_roots, roots_of_derivative

MACHINE_EPS = float(np.finfo(float).eps)
DIFF_GRID = 100


def reference(fn, n: int, kind: Kind = Kind.FIRST) -> Optional[float]:
    """Exact a_n (or b_n = (a_n - a_{n+2})/2), None without an oracle."""
    if fn.oracle is None:
        return None
    if kind is Kind.FIRST:
        return exact_coeff(fn, n)
    return 0.5 * (exact_coeff(fn, n) - exact_coeff(fn, n + 2))


def _errors(value, ref, n, rho):
    err = abs(value - ref)
    rel = err / abs(ref) if ref != 0.0 else math.nan
    # rho^n overflows long before err * rho^n does for the sizes used here
    lnorm = math.log(err) + n * math.log(rho) if err > 0 else -math.inf
    norm = math.exp(lnorm) if lnorm < 709.0 else math.inf
    return rel, norm


# ------------------------------------------------------------------ coefficients


def compute_coeffs(fn, N, strategy="optimal", rho=None, m=None, kind=Kind.FIRST, eps=1e-14, rule=None):
    """CoeffResults for n = 0..N under one of the strategies.

    ``fixed`` uses one contour of radius ``rho`` (``m`` defaulting to the
    node heuristic for degree N); ``optimal`` uses the function's radius
    rule (or ``rule``); ``auto`` minimises kappa numerically per n.
    """
    second = kind is Kind.SECOND
    if strategy == "fixed":
        if rho is None:
            raise ValueError("the fixed strategy needs a radius")
        if m is None:
            m = nodes_for_radius(N, rho, fn.rho_max, eps) + (2 if second else 0)
        plan = ContourPlan(rho, m)
        return (batch_coeffs_u if second else batch_coeffs_t)(fn, N, plan)
    if strategy == "auto":
        rule = Auto(None if math.isinf(fn.rho_max) else fn.rho_max)
    elif strategy != "optimal":
        raise ValueError(f"unknown strategy '{strategy}'")
    return optimal_coeffs(fn, N, rule=rule, m=m, eps=eps, second_kind=second)


def coeff_table(fn, results, kind=Kind.FIRST):
    cols = ["n", "rho", "m", "coeff", "imag_diag"]
    has_ref = fn.oracle is not None
    if has_ref:
        cols += ["ref", "rel_err", "norm_abs_err"]
    rows = []
    for r in results:
        row = (r.n, r.plan.rho, r.plan.m, r.value.real, r.imag_diagnostic)
        if has_ref:
            ref = reference(fn, r.n, kind)
            row += (ref,) + _errors(r.value.real, ref, r.n, r.plan.rho)
        rows.append(row)
    return cols, rows


# ------------------------------------------------------------------ conditioning


def measurement_nodes(fn, n, rho, kind=Kind.FIRST):
    """Node count that keeps the quadrature error far below rounding error."""
    return nodes_for_radius(n, rho, fn.rho_max, 1e-17) + (2 if kind is Kind.SECOND else 0)


def condition_table(fn, ns: Sequence[int], rhos: Sequence[float], kind=Kind.FIRST, m=None, q=1024):
    """kappa(n, rho) on a grid; with an oracle also the measured error ratio."""
    cols = ["n", "rho", "M_rho", "kappa"]
    has_ref = fn.oracle is not None
    if has_ref:
        cols += ["m", "rel_err", "rel_err_over_eps"]
    second = kind is Kind.SECOND
    rows = []
    for n in ns:
        ref = reference(fn, n, kind)
        if ref is None:
            # best available value: the coefficient on its own optimal contour
            single = coeff_u if second else coeff_t
            ref = single(fn, n, plan_for(fn, n, eps=1e-16, extra=2 if second else 0)).value.real
        for rho in rhos:
            est = (kappa_u if second else kappa_t)(fn, n, rho, ref, q)
            row = (n, float(rho), est.m_rho, est.kappa)
            if has_ref:
                mm = m if m is not None else measurement_nodes(fn, n, rho, kind)
                single = coeff_u if second else coeff_t
                val = single(fn, n, ContourPlan(rho, mm)).value.real
                rel = abs(val - ref) / abs(ref) if ref != 0.0 else math.nan
                row += (mm, rel, rel / MACHINE_EPS)
            rows.append(row)
    return cols, rows


# ------------------------------------------------------------------ derivatives and roots


def diff_table(fn, results, ss: Sequence[int], points: int = DIFF_GRID):
    x = np.linspace(-1.0, 1.0, points)
    series = to_series(results)
    cols = ["s", "x", "value"]
    if fn.derivative is not None:
        cols += ["exact", "abs_err"]
    rows = []
    for s in ss:
        d = differentiate(series, s)
        vals = _clenshaw(d.coeffs, x, Kind.FIRST)
        exact = np.asarray(fn.derivative(x, s), dtype=float) if fn.derivative is not None else None
        for i, xi in enumerate(x):
            row = (s, float(xi), float(vals[i]))
            if exact is not None:
                row += (float(exact[i]), abs(float(vals[i]) - float(exact[i])))
            rows.append(row)
    return cols, rows


def oracle_roots(fn, s):
    if fn.derivative is None:
        return None
    return bisection_roots(lambda x: np.asarray(fn.derivative(x, s), dtype=float))


def roots_table(fn, s, N, strategies, rho=1.0, m=None, eps=1e-14, rule=None):
    """Rows (strategy, root, residual[, oracle_root, root_err]) per strategy."""
    ref = oracle_roots(fn, s)
    cols = ["strategy", "root", "residual"]
    if ref is not None:
        cols += ["oracle_root", "root_err"]
    rows = []
    for strat in strategies:
        if strat == "fixed":
            rs = roots_of_derivative(fn, s, N, Strategy.FIXED_RHO, rho=rho, m=m)
        else:
            r = Auto(None if math.isinf(fn.rho_max) else fn.rho_max) if strat == "auto" else rule
            rs = roots_of_derivative(fn, s, N, Strategy.OPTIMAL_RADIUS, m=m, eps=eps, rule=r)
        for root, res in zip(rs.roots, rs.residuals):
            row = (strat, float(root), float(res))
            if ref is not None:
                if ref.size:
                    k = int(np.argmin(np.abs(ref - root)))
                    row += (float(ref[k]), abs(float(root) - float(ref[k])))
                else:
                    row += (math.nan, math.nan)
            rows.append(row)
    return cols, rows


# ------------------------------------------------------------------ reproduction runs


def _prefixed(prefix_cols, prefix, table):
    cols, rows = table
    return prefix_cols + cols, [prefix + r for r in rows]


def _merge(parts):
    cols = parts[0][0]
    rows = [r for part in parts for r in part[1]]
    return cols, rows


def _cond_overlay(fn, ns, top):
    parts = []
    for n in ns:
        rhos = np.geomspace(1.0, top(n), 100)
        parts.append(_prefixed(["fn"], (fn.name,), condition_table(fn, [n], rhos)))
    return _merge(parts)


def fig_cond_entire():
    return _cond_overlay(registry_lookup("exp"), (20, 60), lambda n: 2.0 * (2 * n + 1))


def fig_cond_pole():
    fn = registry_lookup("pole", [2.0])
    return _cond_overlay(fn, (20, 60), lambda n: 0.99 * fn.rho_max)


def _abs_rel(fn, rhos, m, N=50):
    parts = []
    for rho in rhos:
        res = batch_coeffs_t(fn, N, ContourPlan(rho, m))
        cols, rows = coeff_table(fn, res)
        parts.append((cols, rows))
    return _merge(parts)


def fig_abs_rel_exp():
    return _abs_rel(registry_lookup("exp"), (1.0, 4.0, 10.0, 40.0), 101)


def fig_abs_rel_pole():
    return _abs_rel(registry_lookup("pole", [2.0]), (1.0, 2.0, 3.0, 3.7), 202)


def fig_relopt(N=100):
    parts = []
    fn = registry_lookup("exp")
    parts.append(_prefixed(["fn"], ("exp",), coeff_table(fn, optimal_coeffs(fn, N, m=100))))
    fn = registry_lookup("pole", [2.0])
    parts.append(_prefixed(["fn"], (fn.name,), coeff_table(fn, optimal_coeffs(fn, N, eps=1e-14))))
    return _merge(parts)


def _diff_run(fn, ss, m=None, eps=1e-14, N=100):
    return diff_table(fn, optimal_coeffs(fn, N, m=m, eps=eps), ss)


def fig_diff_exp():
    return _diff_run(registry_lookup("exp"), (5, 20, 80), m=100)


def fig_diff_cos():
    return _diff_run(registry_lookup("cos"), (10, 40, 80), m=100)


def fig_diff_rat4():
    return _diff_run(registry_lookup("rational4"), (4, 8, 12), eps=1e-16)


def fig_roots_exp2cos(N=60):
    fn = registry_lookup("exp2cos")
    parts = []
    for s in (1, 2, 3, 4, 5):
        parts.append(_prefixed(["s"], (s,), roots_table(fn, s, N, ("optimal", "fixed"), rho=1.0, m=100)))
    return _merge(parts)


def ex_m_epsilon():
    fn = registry_lookup("pole", [4.0])
    n = 100
    m = nodes_estimate(n, 1e-13, NodeClass.POLE_LIKE)
    res = coeff_t(fn, n, plan_for(fn, n, m=m))
    return coeff_table(fn, [res])


EXPERIMENTS = {
    "fig-cond-entire": fig_cond_entire,
    "fig-cond-pole": fig_cond_pole,
    "fig-abs-rel-exp": fig_abs_rel_exp,
    "fig-abs-rel-pole": fig_abs_rel_pole,
    "fig-relopt": fig_relopt,
    "fig-diff-exp": fig_diff_exp,
    "fig-diff-cos": fig_diff_cos,
    "fig-diff-rat4": fig_diff_rat4,
    "fig-roots-exp2cos": fig_roots_exp2cos,
    "ex-m-epsilon": ex_m_epsilon,
}


def summarize(exp_id, table) -> str:
    """One-line digest of a reproduction table."""
    cols, rows = table
    col = {c: i for i, c in enumerate(cols)}

    def worst(name, keep=lambda r: True):
        vals = [r[col[name]] for r in rows if keep(r) and not math.isnan(r[col[name]])]
        return max(vals) if vals else math.nan

    if exp_id == "ex-m-epsilon":
        r = rows[0]
        return f"{exp_id}: n={r[col['n']]} m={r[col['m']]} rel_err={r[col['rel_err']]!r}"
    if exp_id == "fig-relopt":
        e = worst("rel_err", lambda r: r[col["fn"]] == "exp")
        p = worst("rel_err", lambda r: r[col["fn"]] != "exp")
        return f"{exp_id}: max rel_err exp={e!r} pole={p!r}"
    if exp_id.startswith("fig-abs-rel"):
        rhos = sorted({r[col["rho"]] for r in rows})
        parts = []
        for rho in rhos:
            a0 = next(r for r in rows if r[col["rho"]] == rho and r[col["n"]] == 0)
            parts.append(f"rho={rho!r}: rel_err(a0)={a0[col['rel_err']]!r} max norm_abs_err={worst('norm_abs_err', lambda r: r[col['rho']] == rho)!r}")
        return f"{exp_id}: " + "; ".join(parts)
    if exp_id.startswith("fig-diff"):
        ss = sorted({r[col["s"]] for r in rows})
        parts = [f"s={s} max abs_err={worst('abs_err', lambda r: r[col['s']] == s)!r}" for s in ss]
        return f"{exp_id}: " + "; ".join(parts)
    if exp_id == "fig-roots-exp2cos":
        parts = []
        for s in sorted({r[col["s"]] for r in rows}):
            for st in ("optimal", "fixed"):
                parts.append(f"s={s} {st} max root_err={worst('root_err', lambda r: r[col['s']] == s and r[col['strategy']] == st)!r}")
        return f"{exp_id}: " + "; ".join(parts)
    # condition overlays
    ratio = [r[col["rel_err_over_eps"]] / r[col["kappa"]] for r in rows if r[col["kappa"]] > 0]
    return f"{exp_id}: {len(rows)} rows, max measured/kappa={max(ratio)!r}"
