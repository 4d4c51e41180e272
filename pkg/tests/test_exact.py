import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mulseq.bases import legendre
from mulseq.exact import (
    NEG_INF,
    GaussianRational,
    I,
    ParseError,
    Poly,
    TruncatedSeries2,
    X,
    coefficients_in,
    derivative,
    divrem,
    format_poly,
    from_coefficients,
    gaussian_sqrt,
    gcd_squarefree,
    parse_poly,
    parse_univariate,
    poly_gcd,
    rational_content,
    series_mul_truncate,
    squarefree_decomposition,
)

from conftest import SYMS, rand_poly, sym_equal, to_sympy

A, R = Poly.gen("a"), Poly.gen("r")

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=100)
polys = st.lists(fractions, min_size=0, max_size=7).map(Poly)
nonzero_polys = polys.filter(bool)


# -- Rational / Poly basics ---------------------------------------------------------


def test_rationals_are_reduced():
    q = Fraction(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)
    assert Fraction(0, 7) == Fraction(0, 1) and Fraction(0, 7).denominator == 1


def test_difference_of_squares():
    assert (X + 1) * (X - 1) == X * X - 1


def test_zero_annihilates():
    p = 3 * X**4 - X + 2
    z = Poly(()) * p
    assert not z and z.degree == NEG_INF and (0 * p).degree == NEG_INF


def test_legendre_square_against_schoolbook():
    le2 = (3 * X * X - 1) / 2
    assert le2 * le2 == (9 * X**4 - 6 * X * X + 1) / 4
    assert sym_equal(le2 * le2, sympy.expand(((3 * SYMS["x"] ** 2 - 1) / 2) ** 2))


def test_trimmed_and_degree():
    p = Poly([1, 2, 0, 0])
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Poly([5]).degree == 0


def test_degree_additivity():
    p, q = X**3 + 2, 2 * X**2 - X
    assert (p * q).degree == p.degree + q.degree


@settings(max_examples=1000)
@given(polys, polys, polys, fractions)
def test_ring_axioms(p, q, s, c):
    assert (p + q) + s == p + (q + s)
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert p + q == q + p and p * q == q * p
    assert c * (p + q) == c * p + c * q
    assert p - p == Poly(())


# -- derivative ------------------------------------------------------------------------


def test_derivative_examples():
    assert derivative(X**3) == 3 * X**2
    f = X
    assert derivative((X * X - 1) * f) == 2 * X * f + (X * X - 1) * derivative(f) == 3 * X * X - 1


def test_inner_derivative_matches_oracle_at_points():
    # Poly in x with coefficients in r
    p = X**2 * (R**3 - 2 * R) + X * R * R + (R - Fraction(1, 3))
    dp = derivative(p, "r")
    expr = sympy.diff(to_sympy(p), SYMS["r"])
    for r0 in (Fraction(-2), Fraction(-1, 3), Fraction(0), Fraction(5, 7), Fraction(3)):
        lhs = dp.subs("r", r0)
        rhs = expr.subs(SYMS["r"], sympy.Rational(r0.numerator, r0.denominator))
        assert sym_equal(lhs, sympy.expand(rhs))


def test_derivative_in_absent_variable_is_zero():
    assert not derivative(X**2 + 1, "r")
    with pytest.raises(ValueError):
        derivative(X**2, "q")


@given(polys, polys, fractions)
def test_derivative_linear_and_leibniz(p, q, c):
    assert (p + c * q).diff() == p.diff() + c * q.diff()
    assert (p * q).diff() == p.diff() * q + p * q.diff()


# -- division, gcd ---------------------------------------------------------------------


def test_divrem_examples():
    q, r = divrem(X * X, X - 1)
    assert q == X + 1 and r == 1
    p = X**3 - 7
    assert divrem(p, p) == (Poly([1]), Poly(()))
    q, r = divrem(X**4 - 1, X * X + 1)
    assert q == X * X - 1 and not r


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        divrem(X, Poly(()))


@given(polys, nonzero_polys)
def test_divrem_round_trip(a, b):
    q, r = divrem(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_squarefree_examples():
    assert gcd_squarefree((X - 1) ** 2 * (X + 2)) == (X - 1) * (X + 2)
    p = 3 * X**2 - 3
    assert gcd_squarefree(p) == X * X - 1
    assert gcd_squarefree(X**3) == X
    with pytest.raises(ValueError):
        gcd_squarefree(Poly(()))


def test_squarefree_decomposition_rebuilds():
    p = 2 * (X - 1) ** 3 * (X + 2) ** 2 * (X * X + 1)
    parts = squarefree_decomposition(p)
    prod = Poly([1])
    for f, m in parts:
        prod = prod * f**m
    assert prod * p.lc == p


def test_gcd_against_sympy(rng):
    for _ in range(30):
        g = rand_poly(rng, 3, 9)
        a, b = g * rand_poly(rng, 3, 9), g * rand_poly(rng, 3, 9)
        if not a or not b:
            continue
        ours = poly_gcd(a, b)
        theirs = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), SYMS["x"]).monic()
        assert sym_equal(ours, theirs.as_expr())


def test_rational_content():
    p = Fraction(3, 2) * X**2 + 3
    c = rational_content(p)
    assert c == Fraction(3, 2)
    assert (p / c).coeffs == (2, 0, 1)


# -- nested polynomials -----------------------------------------------------------------


def test_nested_arithmetic_orders_variables():
    p = X * A + R
    assert p.var == "x" and set(p.variables()) == {"x", "a", "r"}
    assert (A * X) == (X * A)
    assert (R + X) - X == R


def test_nested_evaluation_commutes(rng):
    for _ in range(50):
        p = Poly([Poly([Fraction(rng.randint(-5, 5)) for _ in range(3)], "a") for _ in range(4)], "x")
        a0, x0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        staged = p.subs("a", a0)
        staged = staged(x0) if isinstance(staged, Poly) else staged
        full = to_sympy(p).subs({SYMS["a"]: sympy.Rational(a0.numerator, a0.denominator), SYMS["x"]: sympy.Rational(x0.numerator, x0.denominator)})
        assert sympy.Rational(staged.numerator, staged.denominator) == full


def test_coefficients_in_round_trip():
    p = X**2 * A * R + X * R**2 - A + 3
    cs = coefficients_in(p, "r")
    assert len(cs) == 3
    assert from_coefficients(cs, "r") == p


# -- parsing and printing -----------------------------------------------------------------


def test_parse_rejects_polynomial_division():
    with pytest.raises(ParseError):
        parse_poly("(3*x^2 - 1)/2")
    assert parse_poly("1/2*(3*x^2-1)") == legendre(2)


def test_parse_rejects_implicit_multiplication():
    with pytest.raises(ParseError):
        parse_poly("2x")
    with pytest.raises(ParseError):
        parse_poly("x y", variables=("x", "w"))


def test_parse_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("x + q")


def test_printing_is_descending():
    assert format_poly(legendre(2)) == "3/2*x^2 - 1/2"
    assert str(X**3 - 2 * X + 5) == "x^3 - 2*x + 5"


@given(st.lists(fractions, min_size=1, max_size=6))
def test_print_parse_round_trip_univariate(cs):
    p = Poly(cs)
    if p:
        assert parse_univariate(str(p)) == p


def test_print_parse_round_trip_nested(rng):
    for _ in range(100):
        p = Poly([Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)], "a") * (R - rng.randint(-2, 2)) for _ in range(3)], "x")
        assert parse_poly(str(p)) == p


# -- Gaussian rationals ---------------------------------------------------------------------


def test_gaussian_division_is_exact():
    z = GaussianRational(3, -2)
    w = GaussianRational(Fraction(1, 2), 5)
    assert (z / w) * w == z
    assert 1 / (I + 1) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        z / GaussianRational(0)


def test_gaussian_sqrt():
    assert gaussian_sqrt(GaussianRational(-4)) == 2 * I
    s = gaussian_sqrt(GaussianRational(3, 4))
    assert s * s == GaussianRational(3, 4)
    assert gaussian_sqrt(GaussianRational(2)) is None


# -- truncated series -----------------------------------------------------------------------------


def _legendre_series(n):
    return TruncatedSeries2(n, [legendre(k) for k in range(n + 1)])


def _kernel(n):
    return TruncatedSeries2(n, [Poly([1]), -2 * X, Poly([1])][: n + 1])


def test_series_identity_element():
    s = _legendre_series(5)
    one = TruncatedSeries2(5, [Poly([1])])
    assert series_mul_truncate(s, one) == s


def test_series_low_coefficients_by_hand():
    prod = series_mul_truncate(_kernel(3), series_mul_truncate(_legendre_series(3), _legendre_series(3)))
    assert prod[0] == 1
    assert not prod[1]


def test_series_order_mismatch():
    with pytest.raises(ValueError):
        series_mul_truncate(_legendre_series(3), _legendre_series(4))


@pytest.mark.parametrize("n", range(13))
def test_generating_function_identity(n):
    s = _legendre_series(n)
    assert series_mul_truncate(_kernel(n), series_mul_truncate(s, s)).is_one()


def test_series_length_invariant():
    s = TruncatedSeries2(4, [X])
    assert len(s.coeffs) == 5
    with pytest.raises(ValueError):
        TruncatedSeries2(1, [X, X, X])


def test_random_ring_cases_have_small_entries():
    rng = random.Random(1)
    p = rand_poly(rng)
    assert all(abs(c.numerator) <= 100 and c.denominator <= 100 for c in p.coeffs)
