"""Parser and expander for modular form expressions such as ``E10/Delta``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' integer)*
    atom   := integer | decimal | generator | '(' expr ')'

Generators are E4, E6, E10, Delta and J. Integer exponents may be negative,
written ``Delta^-1`` or ``Delta^(-1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .qseries import QSeries, SeriesError, eisenstein, delta, j_function, power, invert, multiply, add

GENERATOR_WEIGHTS = {"E4": 4, "E6": 6, "E10": 10, "Delta": 12, "J": 0}


class FormSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class WeightMismatchError(ValueError):
    def __init__(self, left: int, right: int, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"cannot add terms of weight {left} and weight {right}{where}")
        self.weights = (left, right)


@dataclass(frozen=True)
class Num:
    value: Fraction
    weight: int = 0


@dataclass(frozen=True)
class Gen:
    name: str

    @property
    def weight(self) -> int:
        return GENERATOR_WEIGHTS[self.name]


@dataclass(frozen=True)
class Neg:
    operand: "FormExpr"

    @property
    def weight(self) -> int:
        return self.operand.weight


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "FormExpr"
    right: "FormExpr"

    @property
    def weight(self) -> int:
        if self.op == "*":
            return self.left.weight + self.right.weight
        if self.op == "/":
            return self.left.weight - self.right.weight
        return self.left.weight


@dataclass(frozen=True)
class Pow:
    base: "FormExpr"
    exponent: int

    @property
    def weight(self) -> int:
        return self.base.weight * self.exponent


FormExpr = Num | Gen | Neg | BinOp | Pow

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            if sym not in "+-*/^()":
                raise FormSyntaxError(f"unexpected character {sym!r}", start)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            raise FormSyntaxError(f"expected {sym!r}, found {val!r}" if val else f"expected {sym!r}", pos)

    def parse(self) -> FormExpr:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise FormSyntaxError(f"unexpected token {val!r}", pos)
        return node

    def expr(self) -> FormExpr:
        node = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            _, op, pos = self.take()
            rhs = self.term()
            if rhs.weight != node.weight:
                raise WeightMismatchError(node.weight, rhs.weight, pos)
            node = BinOp(op, node, rhs)
        return node

    def term(self) -> FormExpr:
        node = self.unary()
        while self.peek()[0] == "sym" and self.peek()[1] in "*/":
            _, op, _ = self.take()
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> FormExpr:
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand) if val == "-" else operand
        return self.power()

    def power(self) -> FormExpr:
        node = self.atom()
        while self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            node = Pow(node, self.integer())
        return node

    def integer(self) -> int:
        kind, val, pos = self.take()
        if kind == "sym" and val == "(":
            e = self.integer()
            self.expect(")")
            return e
        sign = 1
        if kind == "sym" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val, pos = self.take()
        if kind != "num" or not val.isdigit():
            raise FormSyntaxError("exponent must be an integer", pos)
        return sign * int(val)

    def atom(self) -> FormExpr:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(Fraction(val))
        if kind == "name":
            if val not in GENERATOR_WEIGHTS:
                raise FormSyntaxError(f"unknown generator {val!r} (expected one of {', '.join(GENERATOR_WEIGHTS)})", pos)
            return Gen(val)
        if kind == "sym" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise FormSyntaxError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_form_expr(text: str) -> FormExpr:
    return _Parser(text).parse()


def _generator(name: str, N: int) -> QSeries:
    if name == "Delta":
        return delta(N)
    if name == "J":
        return j_function(N)
    return eisenstein(GENERATOR_WEIGHTS[name], N)


def _eval(node: FormExpr, N: int) -> QSeries:
    if isinstance(node, Num):
        return QSeries.constant(node.value, N)
    if isinstance(node, Gen):
        return _generator(node.name, N)
    if isinstance(node, Neg):
        return _eval(node.operand, N).scale(-1)
    if isinstance(node, Pow):
        return power(_eval(node.base, N), node.exponent)
    left, right = _eval(node.left, N), _eval(node.right, N)
    if node.op == "+":
        return add(left, right)
    if node.op == "-":
        return add(left, right.scale(-1))
    if node.op == "*":
        return multiply(left, right)
    return multiply(left, invert(right))


def expand(expr: FormExpr | str, N: int) -> QSeries:
    """Expand ``expr`` into a q-series known exactly up to q^N."""
    if isinstance(expr, str):
        expr = parse_form_expr(expr)
    slack = 4
    while True:
        s = _eval(expr, N + slack)
        if s.trunc_order >= N:
            return s.truncate(N)
        slack += max(4, N + slack - s.trunc_order)
        if slack > 64 * (N + 8):
            raise SeriesError("expression loses too much precision to expand")
