"""Text grammar for exact polynomials.

Literals are integers or ``p/q`` rationals; ``/`` is only legal inside a
literal, so ``1/2*(3*x^2-1)`` parses while ``(3*x^2-1)/2`` does not.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .poly import VARIABLES, Poly, canonical

_TOKEN = re.compile(r"\s*(?:(\d+(?:\s*/\s*\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*^()]))")


class ParseError(ValueError):
    pass


def tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = text[pos:].strip()[:1]
            if bad == "/":
                raise ParseError("division is only allowed inside rational literals")
            raise ParseError(f"unexpected character {bad!r} at {pos}")
        num, name, op = m.groups()
        if num is not None:
            try:
                out.append(("num", Fraction(num.replace(" ", ""))))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in literal {num!r}") from None
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, variables):
        self.toks = tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            val = val * self.unary()
        if self.peek()[0] in ("num", "name") or self.peek() == ("op", "("):
            raise ParseError("implicit multiplication is not supported; use '*'")
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, exp = self.take("num")
            if exp.denominator != 1:
                raise ParseError("exponent must be a non-negative integer")
            base = base ** int(exp)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return val
        if kind == "name":
            self.take()
            if val not in self.variables:
                raise ParseError(f"unknown variable {val!r}")
            return Poly.gen(val)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text, variables=("x", "a", "r")):
    """Parse ``text`` into a canonical nested polynomial (or a rational constant)."""
    for v in variables:
        if v not in VARIABLES:
            raise ValueError(f"unsupported variable {v!r}")
    return canonical(_Parser(text, variables).parse())


def parse_univariate(text, var="x"):
    """Parse a polynomial in a single variable, always returning a ``Poly``."""
    val = parse_poly(text, variables=(var,))
    return val if isinstance(val, Poly) else Poly((val,), var)
