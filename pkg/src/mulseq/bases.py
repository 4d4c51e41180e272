"""Simple polynomial sets: standard, Legendre, Hermite and generalized Laguerre.

Members are generated by three-term recurrences in exact arithmetic and
cached per basis kind.  Hermite polynomials use the physicists' convention
``H_{n+1} = 2x H_n - 2n H_{n-1}``; Laguerre polynomials are the standard
``L_n^(alpha)`` with leading coefficient ``(-1)^n / n!``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import Poly, X

_KINDS = ("standard", "legendre", "hermite", "laguerre")


@dataclass(frozen=True)
class BasisKind:
    tag: str
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.tag not in _KINDS:
            raise ValueError(f"unknown basis kind {self.tag!r}")
        if self.tag == "laguerre":
            if self.alpha is None:
                raise ValueError("Laguerre basis needs a parameter alpha")
            alpha = Fraction(self.alpha)
            if alpha <= -1:
                raise ValueError("Laguerre parameter must exceed -1")
            object.__setattr__(self, "alpha", alpha)
        elif self.alpha is not None:
            raise ValueError(f"{self.tag} basis takes no parameter")

    def __str__(self):
        return f"laguerre({self.alpha})" if self.tag == "laguerre" else self.tag


STANDARD = BasisKind("standard")
LEGENDRE = BasisKind("legendre")
HERMITE = BasisKind("hermite")


def laguerre(alpha) -> BasisKind:
    return BasisKind("laguerre", Fraction(alpha))


def basis_kind(name: str, alpha=None) -> BasisKind:
    name = name.lower()
    if name == "laguerre":
        return laguerre(Fraction(alpha) if alpha is not None else Fraction(0))
    return BasisKind(name)


def _next_member(kind, n, cur, prev):
    """Member n+1 from members n and n-1."""
    if kind.tag == "standard":
        return cur * X
    if kind.tag == "legendre":
        return (Fraction(2 * n + 1) * X * cur - n * prev) / (n + 1)
    if kind.tag == "hermite":
        return 2 * X * cur - 2 * n * prev
    a = kind.alpha
    return ((2 * n + 1 + a - X) * cur - (n + a) * prev) / (n + 1)


def _first_two(kind):
    one = Poly((1,))
    if kind.tag == "hermite":
        return [one, 2 * X]
    if kind.tag == "laguerre":
        return [one, 1 + kind.alpha - X]
    return [one, X]


class BasisTable:
    """Members of one simple set, extended on demand and never mutated once published."""

    def __init__(self, kind: BasisKind):
        self.kind = kind
        self._members = tuple(_first_two(kind))
        self._lock = threading.Lock()

    def ensure(self, n: int):
        if n < len(self._members):
            return
        with self._lock:
            members = list(self._members)
            while len(members) <= n:
                k = len(members) - 1
                members.append(_next_member(self.kind, k, members[k], members[k - 1]))
            self._members = tuple(members)

    def member(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("basis index must be non-negative")
        self.ensure(n)
        return self._members[n]

    def members(self, n: int):
        self.ensure(n)
        return self._members[: n + 1]

    def expand(self, p: Poly):
        """Coordinates of ``p`` in this basis, by back-substitution."""
        if not p:
            return []
        n = len(p.coeffs) - 1
        self.ensure(n)
        rem = p
        out = [Fraction(0)] * (n + 1)
        for k in range(n, -1, -1):
            c = rem.coeff(k)
            if not c:
                continue
            q = self._members[k]
            f = c / q.coeffs[-1]
            out[k] = f
            rem = rem - q * f
        return out

    def synthesize(self, coeffs) -> Poly:
        coeffs = list(coeffs)
        if not coeffs:
            return Poly(())
        self.ensure(len(coeffs) - 1)
        acc = Poly(())
        for c, q in zip(coeffs, self._members):
            if c:
                acc = acc + q * c
        return acc


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def table(kind: BasisKind) -> BasisTable:
    with _TABLES_LOCK:
        t = _TABLES.get(kind)
        if t is None:
            t = _TABLES[kind] = BasisTable(kind)
    return t


def basis_poly(kind: BasisKind, n: int) -> Poly:
    """The n-th member of the basis, in standard coordinates."""
    return table(kind).member(n)


def legendre(n: int) -> Poly:
    return basis_poly(LEGENDRE, n)


def expand_in_basis(p: Poly, kind: BasisKind):
    return table(kind).expand(p)


def synthesize_from_basis(coeffs, kind: BasisKind) -> Poly:
    return table(kind).synthesize(coeffs)


def rodrigues(n: int) -> Poly:
    """``D^n[(x^2-1)^n] / (2^n n!)`` computed directly."""
    if n < 0:
        raise ValueError("index must be non-negative")
    p = (X * X - 1) ** n
    for _ in range(n):
        p = p.diff()
    return p / (2**n * factorial(n))


def rodrigues_check(n: int) -> bool:
    return rodrigues(n) == legendre(n)


def _antiderivative(p: Poly) -> Poly:
    return Poly([0] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def orthogonality_integral(m: int, n: int) -> Fraction:
    """Exact value of the integral of ``Le_m * Le_n`` over [-1, 1]."""
    if m < 0 or n < 0:
        raise ValueError("indices must be non-negative")
    prim = _antiderivative(legendre(m) * legendre(n))
    return Fraction(prim(Fraction(1)) - prim(Fraction(-1)))


def legendre_ode_residual(n: int) -> Poly:
    """Left side of ``(1-x^2) y'' - 2x y' + n(n+1) y`` at ``y = Le_n``; vanishes identically."""
    y = legendre(n)
    return (1 - X * X) * y.diff().diff() - 2 * X * y.diff() + n * (n + 1) * y


def legendre_star_residual(n: int) -> Poly:
    """``(x^2+1) y'' - 2x y' - n(n+1) y`` at ``y = Le_n``.

    This variant of the Legendre equation appears with the opposite sign on
    ``x^2``; it is nonzero for every ``n >= 1``, which is how the artifact
    flags it as inconsistent.
    """
    y = legendre(n)
    return (X * X + 1) * y.diff().diff() - 2 * X * y.diff() - n * (n + 1) * y


def parity_reflect(p: Poly) -> Poly:
    """``p(x) -> p(-x)``."""
    return Poly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)], p.var)
