"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-'? factor
    factor  := base ('^' nat)?
    base    := '(' expr ')' | 'qb(' expr ';' nat ')' | 'qf(' expr ';' nat ')'
             | 'z' | 'q' | literal
    literal := int | int '/' int | [int | int '/' int] 'i'

``qb(a; n)`` is [z - a]_q^n and ``qf(P; n)`` is [P]_q^n.  Products,
negation and powers of factored values stay factored; a sum falls back to
the dense form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .field import GaussianRational
from .poly import DensePoly, FactoredPoly, PolyLike, as_dense
from .qcore import QContext, q_pow_factor

# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: GaussianRational


@dataclass(frozen=True)
class Var:
    name: str  # "z" or "q"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Call:
    name: str  # "qb" or "qf"
    arg: "Node"
    n: int


Node = Union[Num, Var, Neg, BinOp, Pow, Call]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?|i)|(?P<name>qb|qf|z|q)(?![A-Za-z])|(?P<op>[-+*^();]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _literal(tok: str, pos: int, text: str) -> GaussianRational:
    imag = tok.endswith("i")
    body = tok[:-1] if imag else tok
    if not body:
        value = Fraction(1)
    else:
        num, _, den = body.partition("/")
        if den and int(den) == 0:
            raise ParseError("zero denominator", pos, text)
        value = Fraction(int(num), int(den) if den else 1)
    return GaussianRational(0, value) if imag else GaussianRational(value)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, tok, pos = self.take()
        if tok != value or kind == "end":
            raise ParseError(f"expected {value!r}, found {tok or 'end of input'!r}", pos, self.text)

    def nat(self) -> int:
        kind, tok, pos = self.take()
        if kind != "num" or not tok.isdigit():
            raise ParseError(f"expected a natural number, found {tok or 'end of input'!r}", pos, self.text)
        return int(tok)

    def parse(self) -> Node:
        node = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {tok!r}", pos, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] == "*":
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return Neg(self.factor())
        return self.factor()

    def factor(self) -> Node:
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            node = Pow(node, self.nat())
        return node

    def base(self) -> Node:
        kind, tok, pos = self.take()
        if kind == "num":
            return Num(_literal(tok, pos, self.text))
        if kind == "name" and tok in ("z", "q"):
            return Var(tok)
        if kind == "name":
            self.expect("(")
            arg = self.expr()
            self.expect(";")
            n = self.nat()
            self.expect(")")
            return Call(tok, arg, n)
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok or 'end of input'!r}", pos, self.text)


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


# evaluation -----------------------------------------------------------------


class EvalError(ValueError):
    pass


def _const(p: PolyLike) -> GaussianRational | None:
    d = as_dense(p) if isinstance(p, FactoredPoly) else p
    if d.is_zero():
        return GaussianRational(0)
    return d.coeffs[0] if d.degree == 0 else None


def _mul(a: PolyLike, b: PolyLike) -> PolyLike:
    if isinstance(a, FactoredPoly) and isinstance(b, FactoredPoly):
        return a * b
    if isinstance(a, FactoredPoly):
        c = _const(b)
        if c is not None and not c.is_zero():
            return a * c
    if isinstance(b, FactoredPoly):
        c = _const(a)
        if c is not None and not c.is_zero():
            return b * c
    return as_dense(a) * as_dense(b)


def evaluate_expr(node: Node, ctx: QContext | None) -> PolyLike:
    if isinstance(node, Num):
        return DensePoly.constant(node.value)
    if isinstance(node, Var):
        if node.name == "z":
            return FactoredPoly(1, [0])
        if ctx is None:
            raise EvalError("the symbol q needs a bound value (pass --q)")
        return DensePoly.constant(ctx.q)
    if isinstance(node, Neg):
        v = evaluate_expr(node.arg, ctx)
        return -v
    if isinstance(node, BinOp):
        left = evaluate_expr(node.left, ctx)
        right = evaluate_expr(node.right, ctx)
        if node.op == "*":
            return _mul(left, right)
        if node.op == "+":
            return as_dense(left) + as_dense(right)
        return as_dense(left) - as_dense(right)
    if isinstance(node, Pow):
        return evaluate_expr(node.base, ctx) ** node.exp
    if isinstance(node, Call):
        if ctx is None:
            raise EvalError(f"{node.name}(...) needs a bound q value (pass --q)")
        arg = evaluate_expr(node.arg, ctx)
        if node.name == "qb":
            a = _const(arg)
            if a is None:
                raise EvalError("qb(a; n) needs a constant first argument")
            return q_pow_factor(a, node.n, ctx)
        if node.n < 1:
            raise EvalError("qf(P; n) needs n >= 1")
        from .theorems import q_fermat_power_any

        return q_fermat_power_any(arg, node.n, ctx)
    raise TypeError(f"unknown node {node!r}")


def parse_poly(text: str, ctx: QContext | None = None) -> PolyLike:
    """Parse and evaluate ``text``; returns a FactoredPoly when the root
    multiset is known structurally, otherwise a DensePoly."""
    value = evaluate_expr(parse_expr(text), ctx)
    if isinstance(value, FactoredPoly) and value.is_constant():
        return value.expand()
    return value
