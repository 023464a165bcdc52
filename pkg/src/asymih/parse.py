"""Recursive-descent parser for polynomial, map and arc literals.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := var | number | 'i' | '(' expr ')'
    number := int ('/' posint)?

A map literal is ``[F=] ( expr , expr , ... )``.  An arc literal is
``(c1) t^q1, (c2) t^q2`` with signed integer exponents.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .gaussrat import GaussRat, I, ONE
from .poly import Poly, PolyMap

__all__ = ["ParseError", "parse_poly", "parse_map", "parse_arc_literal", "DEFAULT_SOURCE_VARS"]

DEFAULT_SOURCE_VARS = ("x", "y")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.text = text
        self.vars = tuple(vars)
        if "i" in self.vars:
            raise ValueError("'i' is reserved for the imaginary unit")
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos, self.text)

    def error(self, msg):
        return ParseError(msg, self.peek()[2], self.text)

    def expr(self) -> Poly:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        b = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos, self.text)
            b = b ** int(val)
        return b

    def base(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "int":
            num = Fraction(int(val))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int" or int(v2) == 0:
                    raise ParseError("denominator must be a positive integer", p2, self.text)
                num = num / int(v2)
            return Poly.constant(GaussRat(num), self.vars)
        if kind == "name":
            if val == "i":
                return Poly.constant(I, self.vars)
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r} (expected one of {list(self.vars)})", pos, self.text)
            return Poly.variable(val, self.vars)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_poly(text: str, vars: Sequence[str] = DEFAULT_SOURCE_VARS) -> Poly:
    """Parse ``text`` into a canonical :class:`Poly` over ``vars``."""
    p = _Parser(text, vars)
    out = p.expr()
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return out


def parse_map(text: str, vars: Sequence[str] = DEFAULT_SOURCE_VARS) -> PolyMap:
    """Parse ``F=(f1, f2, ...)`` (the ``F=`` prefix is optional)."""
    p = _Parser(text, vars)
    kind, val, _ = p.peek()
    if kind == "name" and val not in p.vars and val != "i" and p.toks[p.k + 1][1] == "=":
        p.take()
        p.take()
    p.expect("(")
    comps = [p.expr()]
    while p.peek()[:2] == ("op", ","):
        p.take()
        comps.append(p.expr())
    p.expect(")")
    if p.peek()[0] != "end":
        raise p.error(f"unexpected {p.peek()[1]!r}")
    return PolyMap(comps, tuple(vars))


_ARC_PART = re.compile(r"^\s*\((?P<c>[^()]*(?:\([^()]*\)[^()]*)*)\)\s*(?:\*\s*)?t\s*(?:\^\s*(?P<q>[+-]?\s*\d+))?\s*$")


def parse_arc_literal(text: str):
    """Parse ``(c1) t^q1, (c2) t^q2`` into ((c1, c2), (q1, q2))."""
    parts = _split_top_level(text)
    if len(parts) != 2:
        raise ParseError("an arc needs exactly two coordinates", 0, text)
    coeffs, exps = [], []
    offset = 0
    for part in parts:
        m = _ARC_PART.match(part)
        if m is None:
            raise ParseError("expected '(coefficient) t^exponent'", offset, text)
        c = parse_poly(m.group("c"), ())
        if not c.is_constant():
            raise ParseError("arc coefficient must be a constant", offset, text)
        coeffs.append(c.constant_term())
        q = m.group("q")
        exps.append(int(q.replace(" ", "")) if q is not None else 1)
        offset += len(part) + 1
    return tuple(coeffs), tuple(exps)


def _split_top_level(text: str):
    depth = 0
    parts, cur = [], []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def format_coeff(c: GaussRat) -> str:
    return str(c) if c != ONE else "1"
