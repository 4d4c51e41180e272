"""Symbolic rules ``k -> gamma_k`` and their text grammar.

Grammar: a polynomial in ``k`` (``k^2 + k + 1/2``), ``geom(3/2)``,
``ff(4)`` (falling factorial), ``tri(4)`` (falling factorial of
``k(k+1)``) or ``list(1, 1, 0)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, format_poly, parse_poly
from .exact.parse import ParseError


class SequenceSpec:
    """Base class; subclasses define ``term``."""

    length = None  # finite only for explicit lists

    def term(self, k: int):
        raise NotImplementedError

    def __call__(self, k: int):
        return self.term(k)

    def terms(self, n: int):
        """``[gamma_0, ..., gamma_n]``."""
        if self.length is not None and n >= self.length:
            raise ValueError(f"sequence is only defined through index {self.length - 1}")
        return [self.term(k) for k in range(n + 1)]

    def defined_through(self, n: int) -> bool:
        return self.length is None or n < self.length

    @property
    def degree_in_k(self):
        return None


@dataclass(frozen=True)
class PolynomialInK(SequenceSpec):
    poly: Poly

    def __post_init__(self):
        p = self.poly
        if not isinstance(p, Poly):
            p = Poly((p,), "k")
        elif p.var != "k":
            p = Poly((p,), "k")
        object.__setattr__(self, "poly", p)

    def term(self, k):
        return self.poly(Fraction(k))

    @property
    def degree_in_k(self):
        return max(len(self.poly.coeffs) - 1, 0)

    def __str__(self):
        return format_poly(self.poly)


@dataclass(frozen=True)
class Geometric(SequenceSpec):
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    def term(self, k):
        return self.ratio**k

    def __str__(self):
        return f"geom({self.ratio})"


@dataclass(frozen=True)
class FallingFactorial(SequenceSpec):
    """``k (k-1) ... (k-n+1)``."""

    n: int

    def term(self, k):
        out = Fraction(1)
        for j in range(self.n):
            out *= k - j
        return out

    @property
    def degree_in_k(self):
        return self.n

    def __str__(self):
        return f"ff({self.n})"


@dataclass(frozen=True)
class TriangularFactorial(SequenceSpec):
    """``prod_{j<n} (k(k+1) - j)``: the falling factorial evaluated at ``k(k+1)``."""

    n: int

    def term(self, k):
        m = k * (k + 1)
        out = Fraction(1)
        for j in range(self.n):
            out *= m - j
        return out

    @property
    def degree_in_k(self):
        return 2 * self.n

    def __str__(self):
        return f"tri({self.n})"


@dataclass(frozen=True)
class Explicit(SequenceSpec):
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    @property
    def length(self):
        return len(self.values)

    def term(self, k):
        if k >= len(self.values):
            raise ValueError(f"explicit sequence has no term {k}")
        return self.values[k]

    def __str__(self):
        return "list(" + ", ".join(str(v) for v in self.values) + ")"


def quadratic(alpha, beta) -> PolynomialInK:
    """``<k^2 + alpha k + beta>``; alpha and beta may be rationals or symbolic polynomials."""
    k = Poly.gen("k")
    return PolynomialInK(k * k + k * alpha + beta)


def linear(alpha) -> PolynomialInK:
    return PolynomialInK(Poly.gen("k") + alpha)


def constant(c) -> PolynomialInK:
    return PolynomialInK(Poly((Fraction(c),), "k"))


_CALL = re.compile(r"^\s*(geom|ff|tri|list)\s*\((.*)\)\s*$", re.S)


def _rational(text):
    text = text.strip()
    try:
        return Fraction(text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational literal: {text!r}") from None


def parse_sequence(text: str) -> SequenceSpec:
    m = _CALL.match(text)
    if m:
        name, body = m.groups()
        if name == "list":
            items = [s for s in body.split(",")]
            if not body.strip() or any(not s.strip() for s in items):
                raise ParseError("list(...) needs at least one value")
            return Explicit(tuple(_rational(s) for s in items))
        arg = _rational(body)
        if name == "geom":
            return Geometric(arg)
        if arg.denominator != 1 or arg < 0:
            raise ParseError(f"{name}(...) needs a non-negative integer")
        return FallingFactorial(int(arg)) if name == "ff" else TriangularFactorial(int(arg))
    value = parse_poly(text, variables=("k",))
    return PolynomialInK(value if isinstance(value, Poly) else Poly((value,), "k"))
