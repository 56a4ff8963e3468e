"""Command line: coefficients, condition numbers, derivatives, roots, reproduction runs.

Tables go to stdout (or ``--output``) as CSV with a header row, or as a
JSON list of records. Exit status is 0 on success, 2 for usage and
configuration errors, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import experiments as ex
from .chebcore import Kind
from .conditioning import Auto, BranchLimit, Entire, Fixed, Pole
from .errors import (
    AnalyticityError,
    ChebDomainError,
    ChebError,
    ExprDomainError,
    ExprSyntaxError,
    RegistryError,
    SamplingConditionError,
)
from .exprparse import expression_function
from .funcspace import registry_lookup, registry_names

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
IMAG_WARN = 1e-10

GRAMMAR = """expression grammar (variable x, complex arithmetic, principal branches):
  expr    := term (('+' | '-') term)*
  term    := unary (('*' | '/') unary)*
  unary   := ('-' | '+') unary | power
  power   := primary ('^' unary)?
  primary := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
  FUNC    := 'exp' | 'sin' | 'cos' | 'sqrt' | 'log'
expressions need --rho-max and/or --radius-rule (auto | fixed:R | entire:MU,NU,VS | pole:A | branch)
"""


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ argument parsing


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from None


def _ints(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from None
    if not vals or min(vals) < 0:
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got '{text}'")
    return vals


def _grid(text):
    parts = text.split(":")
    try:
        a, b, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (IndexError, ValueError):
        raise argparse.ArgumentTypeError(f"expected a:b:count, got '{text}'") from None
    if len(parts) != 3 or count < 1 or not (1.0 <= a <= b):
        raise argparse.ArgumentTypeError(f"need 1 <= a <= b and count >= 1 in '{text}'")
    return np.linspace(a, b, count) if count > 1 else np.array([a])


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _eps(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0, 1)")
    return v


def _parse_rule(text, rho_max):
    name, _, arg = text.partition(":")
    try:
        vals = [float(t) for t in arg.split(",")] if arg else []
        if name == "auto" and not vals:
            return Auto(None if math.isinf(rho_max) else rho_max)
        if name == "fixed" and len(vals) == 1:
            return Fixed(vals[0])
        if name == "entire" and len(vals) == 3:
            return Entire(*vals)
        if name == "pole" and len(vals) == 1:
            return Pole(vals[0])
        if name == "branch" and not vals:
            if math.isinf(rho_max):
                raise UsageError("--radius-rule branch needs --rho-max")
            return BranchLimit(rho_max)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad --radius-rule '{text}': {exc}") from None
    raise UsageError(f"bad --radius-rule '{text}'")


def _common(p):
    src = p.add_argument_group("function")
    src.add_argument("--fn", help="registry name: " + ", ".join(registry_names()))
    src.add_argument("--param", type=_floats, action="append", default=[], help="comma-separated parameters")
    src.add_argument("--expr", help="expression in x (see grammar below)")
    src.add_argument("--rho-max", type=float, default=None, help="analyticity limit for --expr")
    src.add_argument("--radius-rule", default=None, help="auto | fixed:R | entire:MU,NU,VS | pole:A | branch")
    out = p.add_argument_group("output")
    out.add_argument("--format", choices=("csv", "json"), default="csv")
    out.add_argument("--output", default=None, help="write to this file instead of stdout")
    p.add_argument("--eps", type=_eps, default=1e-14, help="target relative accuracy (default 1e-14)")


def _strategy(p, default="optimal"):
    p.add_argument("--strategy", choices=("fixed", "optimal", "auto"), default=default)
    p.add_argument("--rho", type=float, default=None, help="contour radius for --strategy fixed")
    p.add_argument("--m", type=_positive_int, default=None, help="trapezoidal node count")


def build_parser():
    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="chebcontour",
        description="Chebyshev coefficients of analytic functions by contour integrals.",
        epilog=GRAMMAR,
        formatter_class=fmt,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="coefficients a_n or b_n, n = 0..N", epilog=GRAMMAR, formatter_class=fmt)
    _common(p)
    _strategy(p)
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--kind", choices=("T", "U"), default="T")

    p = sub.add_parser("cond", help="M(rho) and kappa(n, rho) on a radius grid", epilog=GRAMMAR, formatter_class=fmt)
    _common(p)
    p.add_argument("--n", type=_ints, required=True, help="comma-separated indices")
    p.add_argument("--rho-grid", type=_grid, required=True, help="a:b:count, linearly spaced")
    p.add_argument("--kind", choices=("T", "U"), default="T")
    p.add_argument("--m", type=_positive_int, default=None, help="nodes for the measured errors")

    p = sub.add_parser("diff", help="s-th derivatives on 100 points of [-1, 1]", epilog=GRAMMAR, formatter_class=fmt)
    _common(p)
    _strategy(p)
    p.add_argument("--N", type=_positive_int, default=None)
    p.add_argument("--s", type=_ints, required=True, help="comma-separated derivative orders")

    p = sub.add_parser("roots", help="roots on [-1, 1] of the s-th derivative", epilog=GRAMMAR, formatter_class=fmt)
    _common(p)
    _strategy(p)
    p.add_argument("--N", type=_positive_int, default=None)
    p.add_argument("--s", type=_positive_int, default=1)
    p.add_argument("--compare", action="store_true", help="also run the fixed strategy at --rho (default 1)")

    p = sub.add_parser("repro", help="rerun a published experiment; writes <id>.csv")
    p.add_argument("ids", nargs="+", choices=sorted(ex.EXPERIMENTS) + ["all"], metavar="ID",
                   help="one of: " + ", ".join(sorted(ex.EXPERIMENTS)) + ", all")
    p.add_argument("--outdir", default=".")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


# ------------------------------------------------------------------ configuration


def resolve_function(args):
    if (args.fn is None) == (args.expr is None):
        raise UsageError("give exactly one of --fn and --expr")
    if args.fn is not None:
        if args.rho_max is not None:
            raise UsageError("--rho-max applies to --expr only")
        params = [v for group in args.param for v in group]
        fn = registry_lookup(args.fn, params)
        rule = _parse_rule(args.radius_rule, fn.rho_max) if args.radius_rule else None
        return fn, rule
    if args.param:
        raise UsageError("--param applies to --fn only")
    if args.rho_max is None and args.radius_rule is None:
        raise UsageError("--expr needs --rho-max or --radius-rule")
    rho_max = math.inf if args.rho_max is None else args.rho_max
    if not rho_max > 1.0:
        raise UsageError("--rho-max must exceed 1")
    if args.radius_rule is not None:
        rule = _parse_rule(args.radius_rule, rho_max)
        if isinstance(rule, Pole) and args.rho_max is None:
            rho_max = rule.A
    else:
        rule = Auto(None if math.isinf(rho_max) else rho_max)
    fn = expression_function(args.expr, rho_max, rule)
    return fn, rule


def _default_degree(fn, N):
    if N is not None:
        return N
    if fn.name.startswith(("poly(", "monomial(")):
        return max(len(fn.params) - 1, 0)
    return 60


def _check_strategy(args):
    if args.strategy == "fixed" and args.rho is None:
        raise UsageError("--strategy fixed needs --rho")
    if args.strategy != "fixed" and args.rho is not None and args.command != "roots":
        raise UsageError("--rho applies to --strategy fixed only")


# ------------------------------------------------------------------ output


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def render(table, fmt="csv") -> str:
    cols, rows = table
    if fmt == "json":
        recs = [{c: _json_value(v) for c, v in zip(cols, r)} for r in rows]
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _warn_imag(results):
    for r in results:
        if r.imag_diagnostic > IMAG_WARN:
            print(f"warning: a_{r.n} has imaginary residue {r.imag_diagnostic:.3e}", file=sys.stderr)


# ------------------------------------------------------------------ commands


def cmd_coeffs(args):
    _check_strategy(args)
    fn, rule = resolve_function(args)
    kind = Kind(args.kind)
    res = ex.compute_coeffs(fn, args.N, args.strategy, args.rho, args.m, kind, args.eps, rule)
    _warn_imag(res)
    return ex.coeff_table(fn, res, kind)


def cmd_cond(args):
    fn, _ = resolve_function(args)
    return ex.condition_table(fn, args.n, args.rho_grid, Kind(args.kind), args.m)


def cmd_diff(args):
    _check_strategy(args)
    fn, rule = resolve_function(args)
    N = _default_degree(fn, args.N)
    if max(args.s) > N:
        raise UsageError(f"derivative order {max(args.s)} exceeds N={N}")
    res = ex.compute_coeffs(fn, N, args.strategy, args.rho, args.m, Kind.FIRST, args.eps, rule)
    _warn_imag(res)
    return ex.diff_table(fn, res, args.s)


def cmd_roots(args):
    if args.strategy == "fixed" and args.rho is None:
        args.rho = 1.0
    fn, rule = resolve_function(args)
    N = _default_degree(fn, args.N)
    if args.s > N:
        raise UsageError(f"derivative order {args.s} exceeds N={N}")
    strategies = [args.strategy]
    if args.compare and args.strategy != "fixed":
        strategies.append("fixed")
    rho = 1.0 if args.rho is None else args.rho
    return ex.roots_table(fn, args.s, N, strategies, rho=rho, m=args.m, eps=args.eps, rule=rule)


def cmd_repro(args):
    ids = sorted(ex.EXPERIMENTS) if "all" in args.ids else args.ids
    os.makedirs(args.outdir, exist_ok=True)
    for exp_id in ids:
        table = ex.EXPERIMENTS[exp_id]()
        path = os.path.join(args.outdir, f"{exp_id}.{args.format}")
        _emit(render(table, args.format), path)
        print(ex.summarize(exp_id, table))
    return None


COMMANDS = {"coeffs": cmd_coeffs, "cond": cmd_cond, "diff": cmd_diff, "roots": cmd_roots, "repro": cmd_repro}

# configuration problems, as opposed to numerical breakdowns
_USAGE_ERRORS = (
    UsageError,
    RegistryError,
    ExprSyntaxError,
    SamplingConditionError,
    AnalyticityError,
    ChebDomainError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            table = COMMANDS[args.command](args)
        if table is not None:
            _emit(render(table, args.format), args.output)
    except ExprDomainError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ChebError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # remaining ValueErrors come from argument values (rule parameters, radii)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
