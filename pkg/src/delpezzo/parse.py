"""Input grammars: polynomial expressions and divisor-class expressions.

The polynomial grammar covers variables x, y, z, w, rational literals
("3", "5/6"), +, -, explicit or implicit multiplication, integer
exponents and parentheses; division appears only inside rational
literals, anything else is rejected as non-polynomial.  Parse errors
carry the 1-based column of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactnum import Rat

POLY_VARS = ("x", "y", "z", "w")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (column {pos + 1})")


# --- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Rat


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Sub:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Mul:
    left: "PolyExpr"
    right: "PolyExpr"


@dataclass(frozen=True)
class Pow:
    base: "PolyExpr"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "PolyExpr"


PolyExpr = Num | Var | Add | Sub | Mul | Pow | Neg


@dataclass(frozen=True)
class _Token:
    kind: str   # num | name | op | end
    text: str
    pos: int
    value: Rat | None = None


def _tokenize(src: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(_Token("num", src[i:j], i, Fraction(int(src[i:j]))))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("name", src[i:j], i))
            i = j
            continue
        if ch in "+-*^()/":
            toks.append(_Token("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Token("end", "", n))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}", tok.pos)
        return self.take()

    def parse(self) -> PolyExpr:
        expr = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return expr

    def expr(self) -> PolyExpr:
        tok = self.peek()
        negate = False
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            negate = tok.text == "-"
        node: PolyExpr = self.term()
        if negate:
            node = Neg(node)
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                rhs = self.term()
                node = Add(node, rhs) if tok.text == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> PolyExpr:
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                node = Mul(node, self.factor())
            elif tok.kind in ("num", "name") or (tok.kind == "op" and tok.text == "("):
                node = Mul(node, self.factor())   # implicit multiplication
            else:
                return node

    def factor(self) -> PolyExpr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.factor())
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            etok = self.peek()
            if etok.kind != "num" or etok.value.denominator != 1:
                raise ParseError("expected integer exponent after '^'", etok.pos)
            self.take()
            node = Pow(node, int(etok.value))
        return node

    def atom(self) -> PolyExpr:
        tok = self.take()
        if tok.kind == "num":
            value = tok.value
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.take()
                den = self.peek()
                if den.kind != "num" or den.value.denominator != 1 or den.value == 0:
                    raise ParseError("expected nonzero integer denominator", den.pos)
                self.take()
                value = value / den.value
            return Num(value)
        if tok.kind == "name":
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if tok.kind == "op" and tok.text == "/":
            raise ParseError("division is only allowed inside rational literals", tok.pos)
        raise ParseError(f"expected a number, variable or '('", tok.pos)


def parse_poly(src: str) -> PolyExpr:
    """Parse a polynomial expression to its AST (positioned errors)."""
    return _Parser(src).parse()


def expand(expr: PolyExpr, variables: Sequence[str] = POLY_VARS,
           ) -> dict[tuple[int, ...], Rat]:
    """Expand an AST to a finite exponent-to-coefficient map."""
    index = {v: i for i, v in enumerate(variables)}
    zero = tuple(0 for _ in variables)

    def mul(a: dict, b: dict) -> dict:
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return {k: v for k, v in out.items() if v != 0}

    def go(node: PolyExpr) -> dict:
        if isinstance(node, Num):
            return {zero: node.value} if node.value != 0 else {}
        if isinstance(node, Var):
            if node.name not in index:
                # juxtaposed single-letter variables ("xyz") multiply
                if len(node.name) > 1 and all(ch in index for ch in node.name):
                    acc = {zero: Fraction(1)}
                    for ch in node.name:
                        acc = mul(acc, go(Var(ch)))
                    return acc
                raise ParseError(
                    f"unknown variable {node.name!r} (allowed: {', '.join(variables)})", 0)
            key = tuple(int(i == index[node.name]) for i in range(len(variables)))
            return {key: Fraction(1)}
        if isinstance(node, Neg):
            return {k: -v for k, v in go(node.operand).items()}
        if isinstance(node, Add):
            out = dict(go(node.left))
            for k, v in go(node.right).items():
                out[k] = out.get(k, Fraction(0)) + v
            return {k: v for k, v in out.items() if v != 0}
        if isinstance(node, Sub):
            out = dict(go(node.left))
            for k, v in go(node.right).items():
                out[k] = out.get(k, Fraction(0)) - v
            return {k: v for k, v in out.items() if v != 0}
        if isinstance(node, Mul):
            return mul(go(node.left), go(node.right))
        if isinstance(node, Pow):
            if node.exponent < 0:
                raise ParseError("negative exponents are not polynomial", 0)
            acc = {zero: Fraction(1)}
            for _ in range(node.exponent):
                acc = mul(acc, go(node.base))
            return acc
        raise TypeError(f"unknown node {node!r}")

    return go(expr)


def poly_terms(src: str, variables: Sequence[str] = POLY_VARS) -> dict[tuple[int, ...], Rat]:
    """Parse and expand in one step."""
    return expand(parse_poly(src), variables)


def parse_div_expr(src: str, resolve: "callable") -> "list[tuple[Rat, str]]":
    """Parse a divisor expression like "3H - E1 - 1/2Q" into (coeff, label) terms.

    ``resolve`` is called with each label purely to validate it early and
    raise a helpful error; the returned terms keep the label text.
    """
    toks = _tokenize(src)
    terms: list[tuple[Rat, str]] = []
    i = 0
    first = True
    while toks[i].kind != "end":
        sign = Fraction(1)
        tok = toks[i]
        if tok.kind == "op" and tok.text in "+-":
            sign = Fraction(-1) if tok.text == "-" else Fraction(1)
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-' between divisor terms", tok.pos)
        coeff = Fraction(1)
        tok = toks[i]
        if tok.kind == "num":
            coeff = tok.value
            i += 1
            if toks[i].kind == "op" and toks[i].text == "/":
                den = toks[i + 1]
                if den.kind != "num" or den.value == 0:
                    raise ParseError("expected nonzero integer denominator", toks[i].pos)
                coeff = coeff / den.value
                i += 2
            if toks[i].kind == "op" and toks[i].text == "*":
                i += 1
        tok = toks[i]
        if tok.kind != "name":
            raise ParseError("expected a divisor label", tok.pos)
        resolve(tok.text)
        terms.append((sign * coeff, tok.text))
        i += 1
        first = False
    if not terms:
        raise ParseError("empty divisor expression", 0)
    return terms
