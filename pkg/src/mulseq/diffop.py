"""Differential-operator form of diagonal operators, their symbols, and a
numeric falsifier for the upper-half-plane nonvanishing criterion.

The symbol of ``T = sum p_k(x) D^k`` is ``F(x, w) = sum p_k(x) w^k``.
Real-rootedness preservers (outside the rank-two case) have either
``F(x, -w)`` or ``F(x, w)`` free of zeros when both ``Im x > 0`` and
``Im w > 0``.  The ``orientation`` flag picks which of the two is tested:
``"minus"`` uses ``F(x, -w)``, ``"plus"`` uses ``F(x, w)``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import mpmath

from .exact import GaussianRational, Poly, X, gaussian_sqrt
from .multseq import DiagonalOperator, apply_operator
from .numeric import aberth_ehrlich, mpc_to_gaussian, newton_polish, precision_bits, to_mpc

GUARD = 4
ORIENTATIONS = ("minus", "plus", "both")
W = Poly.gen("w")


def _falling(n, k):
    return factorial(n) // factorial(n - k)


@dataclass(frozen=True)
class DiffOpRep:
    """``T = sum_{k <= order} coeffs[k](x) D^k``.

    ``exact`` records whether the truncation also reproduces ``T`` on
    ``x^n`` for ``order < n <= order + 4``.
    """

    order: int
    coeffs: tuple
    exact: bool = True
    guard_order: int = 0

    def apply(self, p: Poly) -> Poly:
        out = Poly(())
        d = p
        for c in self.coeffs:
            if not d:
                break
            out = out + c * d
            d = d.diff()
        return out

    def reproduces(self, op: DiagonalOperator, n: int) -> bool:
        xn = X**n
        return self.apply(xn) == apply_operator(op, xn)

    def table(self):
        return [(k, str(c)) for k, c in enumerate(self.coeffs)]


def _solve(op: DiagonalOperator, upto: int):
    ps = []
    for n in range(upto + 1):
        rest = apply_operator(op, X**n)
        for k, pk in enumerate(ps):
            if pk:
                rest = rest - pk * X ** (n - k) * _falling(n, k)
        ps.append(rest / factorial(n))
    return ps


def to_diffop(op: DiagonalOperator, order: int | None = None) -> DiffOpRep:
    """Solve the triangular system for ``p_0 .. p_order`` from ``T[x^n]``.

    ``order`` defaults to the degree in ``k`` of a polynomial sequence.
    """
    if order is None:
        order = op.seq.degree_in_k
        if order is None:
            raise ValueError(f"sequence {op.seq} has no natural order; pass one explicitly")
    if order < 0:
        raise ValueError("order must be non-negative")
    if not op.seq.defined_through(order):
        raise ValueError(f"sequence {op.seq} is not defined through {order}")
    guard = order
    for extra in range(GUARD, 0, -1):
        if op.seq.defined_through(order + extra):
            guard = order + extra
            break
    ps = _solve(op, guard)
    exact = all(not p for p in ps[order + 1:])
    return DiffOpRep(order, tuple(ps[: order + 1]), exact, guard)


# -- symbol ---------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorSymbol:
    """``F(x, w)`` stored both as its ``w``-coefficients and as a nested polynomial."""

    coeffs: tuple

    @property
    def poly(self):
        acc = Poly(())
        for k, p in enumerate(self.coeffs):
            if p:
                acc = acc + p * W**k
        return acc

    @property
    def degree_in_w(self) -> int:
        nz = [k for k, p in enumerate(self.coeffs) if p]
        return nz[-1] if nz else -1

    def at(self, x0, orientation="plus"):
        """Coefficients (lowest first) of ``w -> F(x0, +-w)`` as Gaussian rationals."""
        if orientation not in ("minus", "plus"):
            raise ValueError(f"orientation must be 'minus' or 'plus', not {orientation!r}")
        x0 = GaussianRational._lift(x0)
        out = []
        for k, p in enumerate(self.coeffs):
            v = _eval(p, x0)
            out.append(-v if orientation == "minus" and k % 2 else v)
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    def evaluate(self, x0, w0, orientation="plus"):
        acc = GaussianRational(0)
        for c in reversed(self.at(x0, orientation)):
            acc = acc * w0 + c
        return acc

    def __str__(self):
        return str(self.poly)


def _eval(p, x0):
    if not isinstance(p, Poly):
        return GaussianRational._lift(Fraction(p))
    acc = GaussianRational(0)
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
    return acc


def symbol(rep: DiffOpRep) -> OperatorSymbol:
    return OperatorSymbol(tuple(rep.coeffs))


def symbol_from_poly(F: Poly) -> OperatorSymbol:
    """Build a symbol from a polynomial in ``x`` and ``w``."""
    from .exact import coefficients_in

    coeffs = coefficients_in(F, "w") if isinstance(F, Poly) else [F]
    return OperatorSymbol(tuple(c if isinstance(c, Poly) else Poly((c,)) for c in coeffs))


@dataclass(frozen=True)
class SymbolRoots:
    x0: GaussianRational
    orientation: str
    coeffs: tuple
    discriminant: GaussianRational | None
    roots: tuple | None  # None when the discriminant is not a square in Q(i)

    @property
    def exact(self):
        return self.roots is not None


def quadratic_symbol_roots(sym: OperatorSymbol, x0, orientation="minus") -> SymbolRoots:
    """Roots in ``w`` of ``F(x0, -w)`` (or ``F(x0, w)``) when the symbol has ``w``-degree at most two."""
    if sym.degree_in_w > 2:
        raise ValueError("symbol has degree above 2 in w")
    x0 = GaussianRational._lift(x0)
    c = sym.at(x0, orientation)
    deg = sym.degree_in_w
    if deg >= 0 and len(c) - 1 < deg:
        raise ValueError(f"leading w-coefficient vanishes at x0 = {x0}")
    if len(c) == 1:
        return SymbolRoots(x0, orientation, tuple(c), None, ())
    if len(c) == 2:
        return SymbolRoots(x0, orientation, tuple(c), None, (-c[0] / c[1],))
    c0, c1, c2 = c
    disc = c1 * c1 - 4 * c2 * c0
    s = gaussian_sqrt(disc)
    if s is None:
        return SymbolRoots(x0, orientation, tuple(c), disc, None)
    return SymbolRoots(x0, orientation, tuple(c), disc, ((-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)))


# -- falsifier -------------------------------------------------------------------


class Outcome(enum.Enum):
    COUNTEREXAMPLE = "CounterexampleFound"
    NO_ZERO = "NoZeroFound"


@dataclass(frozen=True)
class Counterexample:
    orientation: str
    sample: int
    x0: GaussianRational
    w0: GaussianRational
    residual_bound: Fraction
    margin: Fraction

    def verify(self, sym: OperatorSymbol) -> bool:
        """Exact re-check of ``Im x0 > 0``, ``Im w0 > margin`` and ``|F| < residual_bound``."""
        val = sym.evaluate(self.x0, self.w0, self.orientation)
        return self.x0.im > 0 and self.w0.im > self.margin and val.norm() < self.residual_bound**2

    def to_dict(self):
        return {
            "orientation": self.orientation,
            "sample": self.sample,
            "x0": str(self.x0),
            "w0": [str(self.w0.re), str(self.w0.im)],
            "w0_approx": str(complex(self.w0)),
            "residual_bound": str(self.residual_bound),
            "margin": str(self.margin),
        }


@dataclass(frozen=True)
class FalsifierResult:
    outcome: Outcome
    samples: int
    seed: int
    orientation: str
    counterexamples: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def found(self):
        return self.outcome is Outcome.COUNTEREXAMPLE

    def to_dict(self):
        return {
            "outcome": self.outcome.value,
            "samples": self.samples,
            "seed": self.seed,
            "orientation": self.orientation,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "diagnostics": self.diagnostics,
        }


_GRID_RE = tuple(Fraction(v) for v in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))
_GRID_IM = tuple(Fraction(v) for v in ("1/16", "1/4", "1", "4"))


def sample_point(seed: int, i: int) -> GaussianRational:
    """Deterministic upper-half-plane point for sample ``i``: a fixed grid first, then seeded draws."""
    grid = len(_GRID_RE) * len(_GRID_IM)
    if i < grid:
        return GaussianRational(_GRID_RE[i % len(_GRID_RE)], _GRID_IM[i // len(_GRID_RE)])
    rng = random.Random(seed * 1_000_003 + i)
    return GaussianRational(Fraction(rng.randint(-400, 400), 100), Fraction(rng.randint(1, 400), 100))


def _scan(sym, orientation, samples, seed, residual, margin, ctx):
    max_im = None
    for i in range(samples):
        x0 = sample_point(seed, i)
        coeffs = sym.at(x0, orientation)
        if len(coeffs) < 2:
            continue
        mc = [to_mpc(c, ctx) for c in coeffs]
        for z in aberth_ehrlich(mc, ctx):
            z = newton_polish(mc, z, ctx)
            if max_im is None or z.imag > max_im:
                max_im = z.imag
            if z.imag <= 0:
                continue
            w0 = mpc_to_gaussian(z)
            cand = Counterexample(orientation, i, x0, w0, residual, margin)
            if cand.verify(sym):
                return cand, max_im
    return None, max_im


def bb_falsify(
    sym: OperatorSymbol,
    samples: int = 500,
    seed: int = 0,
    residual=Fraction(1, 10**30),
    margin=Fraction(1, 10**20),
    orientation: str = "both",
) -> FalsifierResult:
    """Search for zeros of the symbol with ``Im x > 0`` and ``Im w > margin``.

    With ``orientation="both"`` a counterexample needs zeros for both
    ``F(x, -w)`` and ``F(x, w)``, since either one being zero-free is
    consistent with preserving real roots.  ``NoZeroFound`` is evidence only.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    residual, margin = Fraction(residual), Fraction(margin)
    bits = precision_bits()
    diagnostics = {"precision_bits": bits}
    if sym.degree_in_w < 1:
        diagnostics["note"] = "symbol is constant in w"
        return FalsifierResult(Outcome.NO_ZERO, samples, seed, orientation, (), diagnostics)
    ctx = mpmath.MPContext()
    ctx.prec = bits
    found = []
    for o in (("minus", "plus") if orientation == "both" else (orientation,)):
        cand, max_im = _scan(sym, o, samples, seed, residual, margin, ctx)
        diagnostics[f"max_im_w_{o}"] = None if max_im is None else mpmath.nstr(max_im, 12)
        diagnostics[f"violation_{o}"] = cand is not None
        if cand is None:
            return FalsifierResult(Outcome.NO_ZERO, samples, seed, orientation, (), diagnostics)
        found.append(cand)
    return FalsifierResult(Outcome.COUNTEREXAMPLE, samples, seed, orientation, tuple(found), diagnostics)
