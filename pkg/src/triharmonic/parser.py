"""Surface syntax for scalar expressions.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INT)*
    atom    := INT ["/" INT] | SYMBOL | OP "(" expr ")" | "(" expr ")"

    SYMBOL  := k1 | k2 | f1 | f2 | sigma | c
    OP      := e1 | e2 | e3 | L          (L is the Laplacian of the 3-manifold)

``/`` only builds rational literals such as ``3/2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BASES, Poly, poly_pow
from .derivation import GENERIC, RewriteSystem, derive, laplacian

GRAMMAR = __doc__.split("Grammar, loosest binding first::")[1].split("``/``")[0].rstrip()

OPERATORS = ("e1", "e2", "e3", "L")


class ExpressionError(Exception):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ParseError(ExpressionError, SyntaxError):
    """Malformed input."""


class UnknownSymbol(ExpressionError):
    """An identifier outside the fixed vocabulary."""


# -- syntax tree ------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Apply:
    op: str
    arg: "Expression"


@dataclass(frozen=True)
class Neg:
    arg: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exp: int


Expression = Num | Sym | Apply | Neg | BinOp | Pow

_PREC = {"+": 1, "-": 1, "*": 2}
_NEG, _POW, _ATOM = 3, 4, 5


def _prec(e: Expression) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG
    if isinstance(e, Pow):
        return _POW
    return _ATOM


def to_source(e: Expression) -> str:
    """Print a tree with the fewest parentheses that parse back to it."""

    def wrap(sub: Expression, min_prec: int) -> str:
        text = to_source(sub)
        return f"({text})" if _prec(sub) < min_prec else text

    if isinstance(e, Num):
        q = e.value
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Apply):
        return f"{e.op}({to_source(e.arg)})"
    if isinstance(e, Neg):
        return "-" + wrap(e.arg, _NEG)
    if isinstance(e, Pow):
        base = to_source(e.base)
        if _prec(e.base) < _POW or (isinstance(e.base, Num) and e.base.value.denominator != 1):
            base = f"({base})"
        return f"{base}^{e.exp}"
    p = _PREC[e.op]
    sep = "*" if e.op == "*" else f" {e.op} "
    return f"{wrap(e.left, p)}{sep}{wrap(e.right, p + 1)}"


def to_poly(e: Expression, rules: RewriteSystem = GENERIC) -> Poly:
    if isinstance(e, Num):
        return Poly.const(e.value)
    if isinstance(e, Sym):
        return rules.reduce(Poly.symbol(e.name)) if rules.zeros else Poly.symbol(e.name)
    if isinstance(e, Apply):
        arg = to_poly(e.arg, rules)
        if e.op == "L":
            return laplacian(arg, rules)
        return derive(arg, int(e.op[1]), rules)
    if isinstance(e, Neg):
        return -to_poly(e.arg, rules)
    if isinstance(e, Pow):
        return poly_pow(to_poly(e.base, rules), e.exp)
    left, right = to_poly(e.left, rules), to_poly(e.right, rules)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    return left * right


# -- tokenizer and parser ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[-+*^/()]))")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while True:
        while pos < len(src) and src[pos].isspace():
            if src[pos] == "\n":
                line, line_start = line + 1, pos + 1
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m or m.start(m.lastgroup) != pos:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        tokens.append(_Token(m.lastgroup, m.group(m.lastgroup), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.take()
        if tok.text != text:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {text!r}, found {found}", tok.line, tok.column)
        return tok

    def parse(self) -> Expression:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return e

    def expr(self) -> Expression:
        e = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expression:
        e = self.unary()
        while self.peek().text == "*":
            self.take()
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expression:
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        e = self.atom()
        while self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", tok.line, tok.column)
            e = Pow(e, int(tok.text))
        return e

    def atom(self) -> Expression:
        tok = self.take()
        if tok.kind == "int":
            value = Fraction(int(tok.text))
            if self.peek().text == "/":
                self.take()
                den = self.take()
                if den.kind != "int":
                    raise ParseError("'/' only forms rational literals like 3/2", den.line, den.column)
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.line, den.column)
                value /= int(den.text)
            return Num(value)
        if tok.kind == "ident":
            if tok.text in OPERATORS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Apply(tok.text, arg)
            if tok.text in BASES:
                return Sym(tok.text)
            raise UnknownSymbol(f"unknown symbol {tok.text!r}", tok.line, tok.column)
        if tok.text == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ParseError(f"unexpected {found}", tok.line, tok.column)


def parse_expression(src: str) -> Expression:
    return _Parser(src).parse()


def parse_poly(src: str, rules: RewriteSystem = GENERIC) -> Poly:
    return to_poly(parse_expression(src), rules)
