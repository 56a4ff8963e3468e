"""User expressions in one complex variable ``x``.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | 'x' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := 'exp' | 'sin' | 'cos' | 'sqrt' | 'log'

``^`` binds tighter than unary minus (``-x^2`` is ``-(x^2)``) and
associates to the right. Exponents other than integer literals make the
expression branch-cut bearing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ExprDomainError, ExprSyntaxError

MAX_SOURCE = 4096
MAX_DEPTH = 64
FUNCTIONS = ("exp", "sin", "cos", "sqrt", "log")
CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Apply:
    func: str
    arg: "Node"


Node = Union[Num, Const, Var, Neg, BinOp, Apply]


# ------------------------------------------------------------------ tokenizer

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src):
    pos = 0
    out = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        mt = _TOKEN.match(src, pos)
        if mt is None:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {src[start]!r}", _byte_offset(src, start))
        kind = mt.lastgroup
        out.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
    out.append(("end", "", len(src)))
    return out


def _byte_offset(src, index):
    return len(src[:index].encode("utf-8"))


class _Parser:
    def __init__(self, src):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, _byte_offset(self.src, tok[2]))

    def expect(self, text):
        tok = self.take()
        if tok[1] != text or tok[0] != "op":
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected '{text}', found {found}", tok)

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error(f"expression nested deeper than {MAX_DEPTH}")

    def expr(self):
        self.enter()
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        self.depth -= 1
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            self.enter()
            operand = self.unary()
            self.depth -= 1
            return Neg(operand) if tok[1] == "-" else operand
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            self.enter()
            exponent = self.unary()
            self.depth -= 1
            return BinOp("^", base, exponent)
        return base

    def primary(self):
        tok = self.take()
        kind, text = tok[0], tok[1]
        if kind == "num":
            return Num(float(text))
        if kind == "name":
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Const(text)
            if text in FUNCTIONS:
                if self.peek()[1] != "(":
                    raise self.error(f"function '{text}' needs one parenthesised argument")
                self.take()
                arg = self.expr()
                if self.peek()[1] == ",":
                    raise self.error(f"function '{text}' takes exactly one argument")
                self.expect(")")
                return Apply(text, arg)
            raise self.error(f"unknown identifier '{text}'", tok)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise self.error(f"unexpected {found}", tok)


def parse(src: str) -> Node:
    """Parse an expression into an immutable tree.

    Raises :class:`ExprSyntaxError` carrying the byte offset of the problem.
    """
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    if len(src) > MAX_SOURCE:
        raise ExprSyntaxError(f"expression longer than {MAX_SOURCE} characters", MAX_SOURCE)
    if "," in src:
        idx = src.index(",")
        raise ExprSyntaxError("functions take exactly one argument", _byte_offset(src, idx))
    p = _Parser(src)
    node = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise p.error(f"unexpected {tok[1]!r} after complete expression", tok)
    return node


# ------------------------------------------------------------------ printing


def to_source(node: Node) -> str:
    """Fully parenthesised source text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return f"-({to_source(node.operand)})"
    if isinstance(node, Apply):
        return f"{node.func}({to_source(node.arg)})"
    return f"({to_source(node.left)}) {node.op} ({to_source(node.right)})"


def _int_exponent(node):
    sign = 1
    while isinstance(node, Neg):
        sign, node = -sign, node.operand
    if isinstance(node, Num) and float(node.value).is_integer():
        return sign * int(node.value)
    return None


def has_branch_cut(node: Node) -> bool:
    """True when a power with a non-integer-literal exponent occurs."""
    if isinstance(node, BinOp):
        if node.op == "^" and _int_exponent(node.right) is None:
            return True
        return has_branch_cut(node.left) or has_branch_cut(node.right)
    if isinstance(node, Neg):
        return has_branch_cut(node.operand)
    if isinstance(node, Apply):
        return has_branch_cut(node.arg)
    return False


# ------------------------------------------------------------------ evaluation

_FUNCS = {"exp": np.exp, "sin": np.sin, "cos": np.cos, "sqrt": np.sqrt}


def _ipow(base, k):
    # repeated squaring keeps conj(z)^k == conj(z^k) exactly
    result = np.ones_like(base)
    b = base
    while k:
        if k & 1:
            result = result * b
        k >>= 1
        if k:
            b = b * b
    return result


def _eval(node, z):
    if isinstance(node, Num):
        return np.full_like(z, node.value)
    if isinstance(node, Const):
        return np.full_like(z, CONSTANTS[node.name])
    if isinstance(node, Var):
        return z
    if isinstance(node, Neg):
        return -_eval(node.operand, z)
    if isinstance(node, Apply):
        arg = _eval(node.arg, z)
        if node.func == "log":
            if np.any(arg == 0):
                raise ExprDomainError("log of zero", subexpr=to_source(node))
            return np.log(arg)
        return _FUNCS[node.func](arg)
    left = _eval(node.left, z)
    if node.op == "^":
        k = _int_exponent(node.right)
        if k is not None:
            if k < 0:
                if np.any(left == 0):
                    raise ExprDomainError("zero raised to a negative power", subexpr=to_source(node))
                return 1.0 / _ipow(left, -k)
            return _ipow(left, k)
        right = _eval(node.right, z)
        if np.any(left == 0):
            raise ExprDomainError("zero raised to a non-integer power", subexpr=to_source(node))
        return np.exp(right * np.log(left))
    right = _eval(node.right, z)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if np.any(right == 0):
        raise ExprDomainError("division by zero", subexpr=to_source(node.right))
    return left / right


def eval_ast(ast: Node, z):
    """Evaluate over the complex numbers with principal sqrt and log.

    ``z`` may be a scalar or an array; exact zero divisors raise
    :class:`ExprDomainError` naming the offending subexpression.
    """
    za = np.asarray(z, dtype=complex)
    out = _eval(ast, za)
    return complex(out) if out.ndim == 0 else out


def expression_function(src: str, rho_max: float = math.inf, radius_rule=None):
    """AnalyticFn for a user expression; analyticity data comes from the caller."""
    from .conditioning import Auto, Fixed
    from .funcspace import AnalyticFn

    ast = parse(src)
    if has_branch_cut(ast) and radius_rule is not None and not isinstance(radius_rule, (Fixed, Auto)):
        raise ValueError("expressions with non-integer powers accept only fixed or auto radius rules")
    return AnalyticFn(
        src,
        lambda z: eval_ast(ast, z),
        float(rho_max),
        radius_rule,
        branch_cut=has_branch_cut(ast),
    )
