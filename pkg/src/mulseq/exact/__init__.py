"""Exact scalars, polynomials over abstract coefficient rings, and truncated series."""
from fractions import Fraction as Rational

from .gaussian import GaussianRational, I, gaussian_sqrt, rational_sqrt
from .parse import ParseError, parse_poly, parse_univariate
from .poly import (
    NEG_INF,
    VARIABLES,
    X,
    Poly,
    coefficients_in,
    from_coefficients,
    canonical,
    divrem,
    exact_div,
    format_poly,
    from_terms,
    gcd_squarefree,
    poly_gcd,
    rational_content,
    squarefree_decomposition,
    squarefree_part,
)
from .series import TruncatedSeries2, series_mul_truncate


def derivative(p, var=None):
    """Formal derivative of ``p`` in ``var`` (the outer variable by default)."""
    return p.diff(var)


__all__ = [
    "Rational", "GaussianRational", "I", "gaussian_sqrt", "rational_sqrt",
    "ParseError", "parse_poly", "parse_univariate",
    "NEG_INF", "VARIABLES", "X", "Poly", "coefficients_in", "from_coefficients", "canonical", "divrem", "exact_div",
    "format_poly", "from_terms", "gcd_squarefree", "poly_gcd", "rational_content",
    "squarefree_decomposition", "squarefree_part", "derivative",
    "TruncatedSeries2", "series_mul_truncate",
]
