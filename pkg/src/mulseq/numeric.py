"""High-precision floating-point root finding, used only by the falsifier.

Nothing here crosses a module boundary as a float: callers convert the
results back to exact Gaussian rationals and re-check them.
"""
from __future__ import annotations

import os
from fractions import Fraction

from .exact import GaussianRational

DEFAULT_PRECISION_BITS = 256


def precision_bits() -> int:
    raw = os.environ.get("MULSEQ_PRECISION_BITS")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError("MULSEQ_PRECISION_BITS must be at least 53")
    return bits


def to_mpc(z, ctx):
    if isinstance(z, GaussianRational):
        return ctx.mpc(ctx.mpf(z.re.numerator) / z.re.denominator, ctx.mpf(z.im.numerator) / z.im.denominator)
    z = Fraction(z)
    return ctx.mpc(ctx.mpf(z.numerator) / z.denominator)


def mpf_to_fraction(v) -> Fraction:
    man, exp = v.man_exp  # stay in the caller's context; mpmath.mpf() would round to 53 bits
    return Fraction(man) * Fraction(2) ** exp


def mpc_to_gaussian(z) -> GaussianRational:
    return GaussianRational(mpf_to_fraction(z.real), mpf_to_fraction(z.imag))


def _horner(coeffs, z):
    """Value and derivative of ``sum coeffs[i] z^i``."""
    p = coeffs[-1]
    dp = 0
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth_ehrlich(coeffs, ctx, max_iter=500):
    """All roots of the polynomial with (mpc) coefficients ``coeffs``, lowest degree first.

    Starts from points on a circle of the Cauchy radius and iterates the
    Aberth correction until every step is below the working precision.
    """
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        return []
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    if n == 1:
        return [-coeffs[0]]
    radius = 1 + max(abs(c) for c in coeffs[:-1])
    z = [radius * ctx.expjpi(ctx.mpf(2 * j) / n + ctx.mpf(1) / (2 * n)) for j in range(n)]
    tol = ctx.ldexp(1, -ctx.prec + 8)
    for _ in range(max_iter):
        biggest = 0
        for i in range(n):
            p, dp = _horner(coeffs, z[i])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else p
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i)
            step = ratio / (1 - ratio * s)
            z[i] -= step
            biggest = max(biggest, abs(step) / max(1, abs(z[i])))
        if biggest < tol:
            break
    return z


def newton_polish(coeffs, z, ctx, steps=8):
    for _ in range(steps):
        p, dp = _horner(coeffs, z)
        if dp == 0 or p == 0:
            break
        z = z - p / dp
    return z
