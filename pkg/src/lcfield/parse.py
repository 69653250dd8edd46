"""Expression language for field arithmetic.

Grammar (EBNF)::

    expr     = term , { ("+" | "-") , term } ;
    term     = power , { ("*" | "/") , power } ;
    power    = unary , [ "^" , exponent ] ;
    unary    = "-" , unary | atom ;
    atom     = number | "d" | name | func , "(" , expr , ")" | "(" , expr , ")" ;
    exponent = [ "-" ] , ( integer | "(" , [ "-" ] , integer , [ "/" , integer ] , ")" ) ,
               [ "^" , exponent ] ;
    func     = "exp" | "sin" | "cos" | "sh" | "val" ;

Unary minus binds tighter than ``^``, and ``^`` is right-associative.
Exponents are exact rationals.  Integer literals are exact; decimal
literals are read as the nearest binary double.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .core import (
    DEFAULT_HORIZON,
    D as D_NUMBER,
    LCNumber,
    ONE,
    add,
    coerce,
    div,
    horizon_of,
    mul,
    power,
    std_part,
    valuation,
)
from .errors import DomainError, LCSyntaxError, UnboundVariable
from . import series as ser

FUNCTIONS = ("exp", "sin", "cos", "sh", "val")


# tree


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Literal(Expr):
    value: Union[Fraction, float]


@dataclass(frozen=True)
class DConst(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: Fraction


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


D = DConst()


# lexer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num | name | op | eof
    text: str
    offset: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    n = len(src)
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            out.append(Token("eof", "", n))
            return out
        m = _TOKEN_RE.match(src, pos)
        if not m or m.end() == pos:
            raise LCSyntaxError(f"unexpected character {src[pos]!r}", src, pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), start))
        pos = m.end()


# parser

_ATOM_START = ("number", "'d'", "name", "'('", "'-'")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, expected=()):
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise LCSyntaxError(f"{message}, found {what}", self.src, t.offset, expected)

    def is_op(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str):
        if not self.is_op(text):
            self.error("unexpected token", [f"'{text}'"])
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            self.error("unexpected token", ["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.advance().text
            r = self.term()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def term(self) -> Expr:
        e = self.power()
        while self.is_op("*") or self.is_op("/"):
            op = self.advance().text
            r = self.power()
            e = Mul(e, r) if op == "*" else Div(e, r)
        return e

    def power(self) -> Expr:
        base = self.unary()
        if self.is_op("^"):
            self.advance()
            base = Pow(base, self.exponent())
        return base

    def unary(self) -> Expr:
        if self.is_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Literal(_number(t.text))
        if t.kind == "name":
            self.advance()
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            if self.is_op("("):
                raise LCSyntaxError(f"unknown function {t.text!r}", self.src, t.offset, FUNCTIONS)
            return D if t.text == "d" else Var(t.text)
        if self.is_op("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.error("expected an operand", _ATOM_START)

    def integer(self) -> int:
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self.error("expected an integer", ["integer"])
        self.advance()
        return int(t.text)

    def exponent(self) -> Fraction:
        neg = False
        if self.is_op("-"):
            self.advance()
            neg = True
        if self.is_op("("):
            self.advance()
            inner_neg = False
            if self.is_op("-"):
                self.advance()
                inner_neg = True
            q = Fraction(self.integer())
            if self.is_op("/"):
                self.advance()
                den_tok = self.tok
                den = self.integer()
                if den == 0:
                    raise LCSyntaxError("zero denominator in exponent", self.src, den_tok.offset)
                q /= den
            self.expect(")")
            if inner_neg:
                q = -q
        elif self.tok.kind == "num":
            q = Fraction(self.integer())
        else:
            self.error("expected a rational exponent", ["integer", "'('", "'-'"])
        if neg:
            q = -q
        if self.is_op("^"):
            at = self.tok.offset
            self.advance()
            e = self.exponent()
            if e.denominator != 1:
                raise LCSyntaxError("exponent tower must be rational", self.src, at)
            if q == 0 and e < 0:
                raise LCSyntaxError("zero to a negative power in exponent", self.src, at)
            q = q ** int(e)
        return q


def _number(text: str) -> Union[Fraction, float]:
    if text.isdigit():
        return Fraction(int(text))
    return float(text)


def parse(src: str) -> Expr:
    return _Parser(src).parse()


# printing


def _fmt_literal(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"
    return repr(float(v))


def to_source(e: Expr) -> str:
    """Fully parenthesized source text that parses back to ``e``."""
    if isinstance(e, Literal):
        return _fmt_literal(e.value)
    if isinstance(e, DConst):
        return "d"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_source(e.arg)})"
    if isinstance(e, Pow):
        return f"({to_source(e.base)}^({e.exponent}))"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    ops = {Add: "+", Sub: "-", Mul: "*", Div: "/"}
    return f"({to_source(e.left)} {ops[type(e)]} {to_source(e.right)})"


# evaluation

Value = Union[LCNumber, float]


def _finite(v: Value) -> LCNumber:
    if isinstance(v, LCNumber):
        return v
    raise DomainError("arithmetic on an infinite standard part")


def eval_expr(e: Expr, env: Mapping[str, object] = None, target_horizon=DEFAULT_HORIZON) -> Value:
    """Evaluate bottom-up.  Returns an LCNumber, or a float for +-inf from sh."""
    env = env or {}
    T = horizon_of(target_horizon)
    return _eval(e, env, T)


def _eval(e: Expr, env, T) -> Value:
    if isinstance(e, Literal):
        return LCNumber.real(float(e.value))
    if isinstance(e, DConst):
        return D_NUMBER
    if isinstance(e, Var):
        if e.name not in env:
            raise UnboundVariable(f"unbound variable {e.name!r}")
        return coerce(env[e.name])
    if isinstance(e, Neg):
        return -_finite(_eval(e.arg, env, T))
    if isinstance(e, Add):
        return add(_finite(_eval(e.left, env, T)), _finite(_eval(e.right, env, T)))
    if isinstance(e, Sub):
        return add(_finite(_eval(e.left, env, T)), -_finite(_eval(e.right, env, T)))
    if isinstance(e, Mul):
        return mul(_finite(_eval(e.left, env, T)), _finite(_eval(e.right, env, T)))
    if isinstance(e, Div):
        return div(_finite(_eval(e.left, env, T)), _finite(_eval(e.right, env, T)), T)
    if isinstance(e, Pow):
        return power(_finite(_eval(e.base, env, T)), e.exponent, T)
    if isinstance(e, Call):
        x = _finite(_eval(e.arg, env, T))
        if e.func == "sh":
            v = std_part(x)
            return v if math.isinf(v) else LCNumber.real(v)
        if e.func == "val":
            v = valuation(x)
            return v if v == math.inf else LCNumber.real(float(v))
        return ser.elementary(e.func, x, T)
    raise TypeError(f"not an expression: {e!r}")


def evaluate(src: str, env: Mapping[str, object] = None, target_horizon=DEFAULT_HORIZON) -> Value:
    return eval_expr(parse(src), env, target_horizon)


def free_vars(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, (Literal, DConst)):
        return set()
    if isinstance(e, (Neg, Call)):
        return free_vars(e.arg)
    if isinstance(e, Pow):
        return free_vars(e.base)
    return free_vars(e.left) | free_vars(e.right)


def poly_from_expr(e: Expr, var: str = "x", target_horizon=DEFAULT_HORIZON) -> ser.PowerSeries:
    """Read an expression as a polynomial in ``var`` with field coefficients."""
    if isinstance(e, str):
        e = parse(e)
    T = horizon_of(target_horizon)
    if var not in free_vars(e):
        return ser.constant(_finite(_eval(e, {}, T)))
    if isinstance(e, Var):
        return ser.X
    if isinstance(e, Neg):
        return ser.ps_neg(poly_from_expr(e.arg, var, T))
    if isinstance(e, Add):
        return ser.ps_add(poly_from_expr(e.left, var, T), poly_from_expr(e.right, var, T))
    if isinstance(e, Sub):
        return ser.ps_sub(poly_from_expr(e.left, var, T), poly_from_expr(e.right, var, T))
    if isinstance(e, Mul):
        return ser.ps_mul(poly_from_expr(e.left, var, T), poly_from_expr(e.right, var, T))
    if isinstance(e, Div) and var not in free_vars(e.right):
        c = _finite(_eval(e.right, {}, T))
        return ser.ps_mul(poly_from_expr(e.left, var, T), ser.constant(div(ONE, c, T)))
    if isinstance(e, Pow) and e.exponent.denominator == 1 and e.exponent >= 0:
        return ser.ps_power(poly_from_expr(e.base, var, T), int(e.exponent))
    raise DomainError(f"not a polynomial in {var}: {to_source(e)}")
