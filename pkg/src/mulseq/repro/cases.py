"""Exact algebra behind the quadratic and geometric impossibility results."""
from __future__ import annotations

from fractions import Fraction

from ..bases import LEGENDRE, expand_in_basis, synthesize_from_basis
from ..exact import Poly, X, coefficients_in, parse_poly
from ..multseq import DiagonalOperator, apply_operator
from ..roots import INF, certify_sign, discriminant, isolate_roots
from ..sequences import PolynomialInK, quadratic

A = Poly.gen("a")
B = Poly.gen("b")
R = Poly.gen("r")

LINEAR_DISC = "-108/125*(421 + 172*a + 20*a^2)"
GEOM_DISC = (
    "16384/10504375*(44044*r^12 - 147576*r^14 + 180624*r^16 - 96991*r^18"
    " + 22329*r^20 - 2565*r^22 + 135*r^24)"
)
CASE3_CUBIC = Fraction("9.8149")
CASE3_QUARTIC = Fraction("11.7649")
DECIMAL_TOL = Fraction(5, 10**4)


def linear_image():
    """Image of ``(1+x)^3`` under ``<k + a>`` in the Legendre basis."""
    op = DiagonalOperator(LEGENDRE, PolynomialInK(Poly.gen("k") + A))
    return apply_operator(op, (1 + X) ** 3)


def linear_discriminant():
    return discriminant(linear_image())


def quartic_image(alpha, beta):
    """``f(alpha, beta, x)``: image of ``(1+x)^4`` under ``<k^2 + alpha k + beta>``."""
    return apply_operator(DiagonalOperator(LEGENDRE, quadratic(alpha, beta)), (1 + X) ** 4)


def geometric_image(r=R, p=None):
    """Image of ``p`` (default ``(1+x)^4``) under ``<r^k>``, with ``r`` symbolic by default."""
    p = (1 + X) ** 4 if p is None else p
    coords = expand_in_basis(p, LEGENDRE)
    return synthesize_from_basis([c * r**k for k, c in enumerate(coords)], LEGENDRE)


def geometric_discriminant():
    return discriminant(geometric_image())


def _interval_text(lo, hi, lo_closed, hi_closed, hole=None):
    left = "[" if lo_closed else "("
    right = "]" if hi_closed else ")"
    lo_s = "-inf" if lo == -INF else str(lo)
    hi_s = "inf" if hi == INF else str(hi)
    if hole is None:
        return f"{left}{lo_s}, {hi_s}{right}"
    return f"{left}{lo_s}, {hole}) U ({hole}, {hi_s}{right}"


def _cert(p, sign, rng):
    lo, hi, lo_closed, hi_closed, hole = rng
    c = certify_sign(p, sign, lo, hi, lo_closed, hi_closed, allowed_zeros=() if hole is None else (hole,))
    word = "negative" if sign < 0 else "positive"
    return {
        "claim": f"{word} on {_interval_text(lo, hi, lo_closed, hi_closed, hole)}",
        "certified": c.holds,
        "roots_inside": c.roots_inside,
        "polynomial": str(p),
    }


_CASES = {
    # beta substitution, alpha range (lo, hi, lo_closed, hi_closed, excluded point), boundary r
    1: (lambda a, r: r * (1 - a), (Fraction(-1), INF, True, False, Fraction(1)), 1),
    2: (lambda a, r: r * a, (Fraction(0), Fraction(1), False, False, None), 2),
}


def case12_nested_discriminants(case: int) -> dict:
    """Certify the three sign conditions of the nested-discriminant argument.

    Returns a JSON-ready dictionary whose ``ok`` entry is true exactly when
    every condition is certified on the case's range of ``a``.
    """
    if case not in _CASES:
        raise ValueError("case must be 1 or 2")
    subst, rng, boundary = _CASES[case]
    f = quartic_image(A, subst(A, R))
    dx = discriminant(f)
    ddr = dx.diff("r")
    r_degree = len(coefficients_in(ddr, "r")) - 1
    dr = discriminant(ddr, "r")
    checks = {
        "delta_r": _cert(dr, -1, rng),
        "d_dr_at_r0": _cert(ddr.subs("r", 0), 1, rng),
        f"delta_x_at_r{boundary}": _cert(dx.subs("r", boundary), -1, rng),
    }
    out = {
        "case": case,
        "beta": str(subst(A, R)),
        "d_dr_degree_in_r": r_degree,
        "checks": checks,
        "ok": r_degree == 2 and all(c["certified"] for c in checks.values()),
    }
    if case == 1:
        out["alpha_1"] = alpha_one_reading(dx, ddr, dr)
    return out


def alpha_one_reading(dx, ddr, dr):
    """What the algebra says at the excluded point ``a = 1`` of case 1."""
    dr_at_1 = dr(Fraction(1)) if isinstance(dr, Poly) else dr
    ddr_at_1 = ddr.subs("a", 1)
    return {
        "delta_r_at_a1": str(dr_at_1),
        "d_dr_at_a1_identically_zero": not ddr_at_1,
        "delta_x_at_a1": str(dx.subs("a", 1)),
        "supported_reading": "exclude a = 1 before substituting"
        if not dr_at_1 and not ddr_at_1
        else "a = 1 may be kept",
    }


def _largest_root(p, width):
    iso = isolate_roots(p, width)
    if not iso.intervals:
        raise ArithmeticError(f"{p} has no real roots")
    return iso.intervals[-1]


def case3_thresholds(width=Fraction(1, 10**6)) -> dict:
    """Thresholds in ``b`` for ``<k^2 + b>`` from the cubic and quartic test inputs."""
    seq = quadratic(0, B)
    op = DiagonalOperator(LEGENDRE, seq)
    cubic_disc = discriminant(apply_operator(op, (1 + X) ** 3))
    quartic_disc = discriminant(apply_operator(op, (1 + X) ** 4))
    c_lo, c_hi = _largest_root(cubic_disc, width)
    q_lo, q_hi = _largest_root(quartic_disc, width)
    cubic_neg = certify_sign(cubic_disc, -1, c_hi, INF)
    quartic_neg = certify_sign(quartic_disc, -1, -INF, q_lo)
    cubic_mid, quartic_mid = (c_lo + c_hi) / 2, (q_lo + q_hi) / 2
    return {
        "cubic_discriminant": str(cubic_disc),
        "quartic_discriminant": str(quartic_disc),
        "cubic_root_interval": [str(c_lo), str(c_hi)],
        "quartic_root_interval": [str(q_lo), str(q_hi)],
        "cubic_root_decimal": f"{float(cubic_mid):.8f}",
        "quartic_root_decimal": f"{float(quartic_mid):.8f}",
        "cubic_matches": abs(cubic_mid - CASE3_CUBIC) <= DECIMAL_TOL,
        "quartic_matches": abs(quartic_mid - CASE3_QUARTIC) <= DECIMAL_TOL,
        "cubic_negative_above": cubic_neg.holds,
        "quartic_negative_below": quartic_neg.holds,
        "overlap_nonempty": c_hi < q_lo,
        "ok": (
            abs(cubic_mid - CASE3_CUBIC) <= DECIMAL_TOL
            and abs(quartic_mid - CASE3_QUARTIC) <= DECIMAL_TOL
            and cubic_neg.holds
            and quartic_neg.holds
            and c_hi < q_lo
        ),
    }


def expected_linear_discriminant():
    return parse_poly(LINEAR_DISC, variables=("a",))


def expected_geometric_discriminant():
    return parse_poly(GEOM_DISC, variables=("r",))
