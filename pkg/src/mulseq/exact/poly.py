"""Dense univariate polynomials over an exact coefficient ring.

A polynomial in ``x`` whose coefficients are themselves polynomials in ``a``
gives bivariate support; nesting follows the fixed order in ``VARIABLES``
(outermost first).  A coefficient may be a ``Fraction``, a
``GaussianRational`` or a ``Poly`` in a strictly inner variable.
Constant inner polynomials are collapsed to their scalar so that equality
is structural.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

VARIABLES = ("x", "w", "k", "a", "b", "c", "d", "e", "r", "s", "t")
_RANK = {v: i for i, v in enumerate(VARIABLES)}

NEG_INF = float("-inf")


def _norm_coeff(c, rank):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Poly):
        if _RANK[c.var] <= rank:
            raise ValueError(f"cannot nest a polynomial in {c.var!r} inside one of rank {rank}")
        if len(c.coeffs) <= 1:
            return c.coeffs[0] if c.coeffs else Fraction(0)
    return c


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        if var not in _RANK:
            raise ValueError(f"unknown variable {var!r}")
        rank = _RANK[var]
        cs = [_norm_coeff(c, rank) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs, var):
        # internal constructor: coefficients already normalized, only trims
        while cs and not cs[-1]:
            cs.pop()
        self = object.__new__(cls)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)
        return self

    @classmethod
    def gen(cls, var="x"):
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var="x"):
        return cls((c,), var)

    @classmethod
    def monomial(cls, n, c=1, var="x"):
        return cls([0] * n + [c], var)

    # -- basic properties ------------------------------------------------

    @property
    def degree(self):
        """Degree in the outer variable; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if len(self.coeffs) > 1:
            return False
        c = self.coeffs[0] if self.coeffs else Fraction(0)
        return c == other

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.var, self.coeffs))

    # -- ring operations -------------------------------------------------

    def _outer(self, other):
        """True: same variable; False: ``other`` is a coefficient; None: ``other`` is the outer ring."""
        if isinstance(other, Poly):
            ro, rs = _RANK[other.var], _RANK[self.var]
            if ro == rs:
                return True
            if ro < rs:
                return None
        return False

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __add__(self, other):
        mode = self._outer(other)
        if mode is None:
            return other.__add__(self)
        if mode:
            cs = [a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0)]
            return Poly._raw([_norm_coeff(c, _RANK[self.var]) for c in cs], self.var)
        if isinstance(other, int):
            other = Fraction(other)
        if not self.coeffs:
            return Poly((other,), self.var)
        cs = list(self.coeffs)
        cs[0] = _norm_coeff(cs[0] + other, _RANK[self.var])
        return Poly._raw(cs, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        mode = self._outer(other)
        if mode is None:
            return other.__rsub__(self)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        mode = self._outer(other)
        if mode is None:
            return other.__mul__(self)
        rank = _RANK[self.var]
        if mode:
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly._raw([], self.var)
            res = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j, bj in enumerate(b):
                    res[i + j] = res[i + j] + ai * bj
            return Poly._raw([_norm_coeff(c, rank) for c in res], self.var)
        if isinstance(other, int):
            other = Fraction(other)
        if not other:
            return Poly._raw([], self.var)
        return Poly._raw([_norm_coeff(c * other, rank) for c in self.coeffs], self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly((1,), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a coefficient-ring element, or exact division by a polynomial."""
        mode = self._outer(other)
        if mode is None:
            return other.__rtruediv__(self)
        if mode:
            return exact_div(self, other)
        if isinstance(other, int):
            other = Fraction(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rank = _RANK[self.var]
        return Poly._raw([_norm_coeff(c / other, rank) for c in self.coeffs], self.var)

    def __rtruediv__(self, other):
        if not other:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return other / self.coeffs[0]
        raise ValueError("not an exact division")

    # -- calculus and evaluation -----------------------------------------

    def diff(self, var=None):
        """Formal derivative with respect to ``var`` (default: the outer variable)."""
        if var is None or var == self.var:
            rank = _RANK[self.var]
            return Poly._raw([_norm_coeff(c * i, rank) for i, c in enumerate(self.coeffs)][1:], self.var)
        if var not in _RANK:
            raise ValueError(f"unknown variable {var!r}")
        if _RANK[var] < _RANK[self.var]:
            return Poly._raw([], self.var)
        rank = _RANK[self.var]
        return Poly._raw(
            [_norm_coeff(c.diff(var), rank) if isinstance(c, Poly) else Fraction(0) for c in self.coeffs],
            self.var,
        )

    def __call__(self, value):
        """Horner evaluation in the outer variable."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if isinstance(acc, int):
            acc = Fraction(acc)
        return acc

    def subs(self, var, value):
        """Substitute ``value`` for ``var`` at whatever nesting level it lives."""
        if var == self.var:
            return self(value)
        if _RANK[var] < _RANK[self.var]:
            return self
        cs = [c.subs(var, value) if isinstance(c, Poly) else c for c in self.coeffs]
        # the substituted value may carry outer variables; rebuild by arithmetic
        if any(isinstance(c, Poly) and _RANK[c.var] <= _RANK[self.var] for c in cs):
            acc = Poly((), self.var)
            xv = Poly.gen(self.var)
            for c in reversed(cs):
                acc = acc * xv + c
            return acc
        return Poly(cs, self.var)

    def map_coeffs(self, fn):
        return Poly([fn(c) for c in self.coeffs], self.var)

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.coeffs[-1]

    def variables(self):
        out = {self.var} if len(self.coeffs) > 1 else set()
        for c in self.coeffs:
            if isinstance(c, Poly):
                out |= c.variables()
        return out

    # -- flat term view ----------------------------------------------------

    def terms(self):
        """Map ``((var, exp), ...) -> scalar`` over all nonzero monomials."""
        out = {}
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            head = ((self.var, i),) if i else ()
            if isinstance(c, Poly):
                for key, val in c.terms().items():
                    out[head + key] = val
            else:
                out[head] = c
        return out

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def from_terms(terms, order):
    """Build a nested polynomial from a term map using ``order`` (outermost first)."""
    if not order:
        total = Fraction(0)
        for key, val in terms.items():
            if key:
                raise ValueError(f"variables {key} not covered by the order")
            total = total + val
        return total
    var, rest = order[0], order[1:]
    groups = {}
    for key, val in terms.items():
        exps = dict(key)
        e = exps.pop(var, 0)
        inner_key = tuple(sorted(exps.items(), key=lambda kv: _RANK[kv[0]]))
        groups.setdefault(e, {})
        groups[e][inner_key] = groups[e].get(inner_key, 0) + val
    if not groups:
        return Poly((), var)
    cs = [Fraction(0)] * (max(groups) + 1)
    for e, sub in groups.items():
        cs[e] = from_terms(sub, rest)
    return Poly(cs, var)


def coefficients_in(p, var):
    """Coefficients of ``p`` viewed as a polynomial in ``var``, lowest power first.

    Each entry is a canonical nested polynomial (or scalar) free of ``var``.
    """
    if var not in _RANK:
        raise ValueError(f"unknown variable {var!r}")
    if not isinstance(p, Poly):
        return [p] if p else []
    if p.var == var:
        return list(p.coeffs)
    groups = {}
    for key, val in p.terms().items():
        exps = dict(key)
        e = exps.pop(var, 0)
        inner = tuple(sorted(exps.items(), key=lambda kv: _RANK[kv[0]]))
        groups.setdefault(e, {})[inner] = val
    if not groups:
        return []
    rest = sorted(p.variables() - {var}, key=_RANK.__getitem__)
    out = [Fraction(0)] * (max(groups) + 1)
    for e, sub in groups.items():
        out[e] = from_terms(sub, rest)
        if isinstance(out[e], Poly) and len(out[e].coeffs) <= 1:
            out[e] = _norm_coeff(out[e], -1)
    return out


def from_coefficients(coeffs, var):
    """Inverse of :func:`coefficients_in`: ``sum(c * var**i)`` in canonical nesting."""
    acc = Fraction(0)
    v = Poly.gen(var)
    for c in reversed(list(coeffs)):
        acc = acc * v + c
    return canonical(acc) if isinstance(acc, Poly) else acc


def canonical(p):
    """Re-nest ``p`` in the global variable order."""
    if not isinstance(p, Poly):
        return p
    order = sorted(p.variables(), key=_RANK.__getitem__)
    if not order:
        return p.coeffs[0] if p.coeffs else Fraction(0)
    return from_terms(p.terms(), order)


def divrem(a, b):
    """Euclidean division over a coefficient field: ``a = q*b + r`` with ``deg r < deg b``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.var != b.var:
        raise ValueError("divrem needs polynomials in the same variable")
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    inv = 1 / b.coeffs[-1] if isinstance(b.coeffs[-1], (Fraction, int)) else None
    bcs = b.coeffs
    if len(rem) <= db:
        return Poly._raw([], a.var), a
    q = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = c * inv if inv is not None else c / bcs[-1]
        q[i - db] = f
        for j in range(db + 1):
            rem[i - db + j] = rem[i - db + j] - f * bcs[j]
    return Poly(q, a.var), Poly(rem[:db], a.var)


def exact_div(a, b):
    """Quotient ``a / b`` in an integral domain; raises if ``b`` does not divide ``a``."""
    q, r = _ring_divrem(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a}")
    return q


def _ring_divrem(a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rank = _RANK[a.var]
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lead = b.coeffs[-1]
    if len(rem) <= db:
        return Poly._raw([], a.var), a
    q = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        f = c / lead
        q[i - db] = f
        for j in range(db + 1):
            rem[i - db + j] = rem[i - db + j] - f * b.coeffs[j]
    return (
        Poly([_norm_coeff(c, rank) for c in q], a.var),
        Poly([_norm_coeff(c, rank) for c in rem[:db]], a.var),
    )


def poly_gcd(a, b):
    """Monic gcd over the rationals (zero if both inputs vanish)."""
    while b:
        a, b = b, divrem(a, b)[1]
    return a.monic() if a else a


def squarefree_part(p):
    """Monic polynomial with the same distinct roots as ``p``, each simple."""
    if not p:
        raise ValueError("square-free part of the zero polynomial")
    if len(p.coeffs) == 1:
        return Poly((1,), p.var)
    g = poly_gcd(p, p.diff())
    return divrem(p, g)[0].monic()


gcd_squarefree = squarefree_part


def squarefree_decomposition(p):
    """Yun's algorithm: list of ``(factor, multiplicity)`` with monic square-free factors."""
    if not p:
        raise ValueError("decomposition of the zero polynomial")
    out = []
    dp = p.diff()
    g = poly_gcd(p, dp)
    b = divrem(p, g)[0]
    c = divrem(dp, g)[0]
    d = c - b.diff()
    i = 1
    while len(b.coeffs) > 1:
        a = poly_gcd(b, d)
        if len(a.coeffs) > 1:
            out.append((a.monic(), i))
        b = divrem(b, a)[0]
        c = divrem(d, a)[0]
        d = c - b.diff()
        i += 1
    return out


def rational_content(p):
    """Positive rational ``c`` with ``p / c`` having coprime integer leaves."""
    from math import gcd

    num, den = 0, 1
    for val in (p.terms() if isinstance(p, Poly) else {(): p}).values():
        val = Fraction(val)
        num = gcd(num, val.numerator)
        den = den * val.denominator // gcd(den, val.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


# -- text form -------------------------------------------------------------


def _fmt_scalar(c):
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def format_poly(p):
    """Flat sum of monomials in descending powers (outer variable first)."""
    if not isinstance(p, Poly):
        return _fmt_scalar(p)
    terms = p.terms()
    if not terms:
        return "0"

    def sort_key(item):
        exps = dict(item[0])
        return tuple(-exps.get(v, 0) for v in VARIABLES)

    parts = []
    for key, val in sorted(terms.items(), key=sort_key):
        mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in key)
        neg = isinstance(val, Fraction) and val < 0
        mag = -val if neg else val
        if not isinstance(val, Fraction):
            body = f"({val})*{mono}" if mono else f"({val})"
        elif mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


X = Poly.gen("x")
