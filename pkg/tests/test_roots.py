import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester

from mulseq.bases import legendre
from mulseq.exact import Poly, X, parse_poly
from mulseq.repro.cases import geometric_image, linear_image
from mulseq.roots import (
    INF,
    CubicClass,
    QuarticTag,
    cauchy_bound,
    certify_sign,
    classify_cubic,
    classify_quartic,
    depressed_quartic,
    discriminant,
    interlace_check,
    is_real_rooted,
    isolate_roots,
    real_roots_with_multiplicity,
    resultant,
    sturm_chain,
    sturm_count,
)

from conftest import SYMS, to_sympy

A, B = Poly.gen("a"), Poly.gen("b")


def _linear_product(rng, n, bound=5):
    p = Poly([1])
    for _ in range(n):
        p = p * (X - Fraction(rng.randint(-bound * 4, bound * 4), rng.randint(1, 4)))
    return p * Fraction(rng.choice([-3, -1, 1, 2]), rng.randint(1, 3))


def _random_poly(rng, max_degree=8):
    n = rng.randint(1, max_degree)
    kind = rng.random()
    if kind < 0.4:
        return _linear_product(rng, n)
    if kind < 0.7:
        # a real-rooted part times a quadratic that may or may not split
        q = X * X + rng.randint(-3, 3) * X + rng.randint(-3, 3)
        return _linear_product(rng, max(n - 2, 0)) * q
    cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)] + [Fraction(rng.choice([-2, -1, 1, 3]))]
    return Poly(cs)


# -- counting ----------------------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count(X * X + 1) == 0
    assert sturm_count(legendre(4), Fraction(-1), Fraction(1)) == 4
    assert sturm_count((X - 1) ** 2 * (X + 2)) == 2


def test_half_open_interval():
    p = X * (X - 1)
    assert sturm_count(p, Fraction(0), Fraction(1)) == 1
    assert sturm_count(p, Fraction(-1), Fraction(0)) == 1
    assert sturm_count(p, Fraction(2), Fraction(1)) == 0


def test_zero_polynomial_rejected():
    for fn in (sturm_count, is_real_rooted, isolate_roots, sturm_chain):
        with pytest.raises(ValueError):
            fn(Poly(()))


def test_chain_ends_in_constant():
    chain = sturm_chain(legendre(6) * (X - 3) ** 2)
    assert chain[-1].degree == 0
    assert len(chain) <= chain[0].degree + 1


def test_real_rooted_examples():
    assert is_real_rooted((X - 1) ** 3)
    assert not is_real_rooted(X * X + X + 1)
    assert is_real_rooted(legendre(5) + Fraction(1, 10) * legendre(3))
    assert is_real_rooted(Poly([7]))


def test_real_rootedness_against_sympy(rng):
    for _ in range(200):
        p = _random_poly(rng)
        sp = sympy.Poly(to_sympy(p), SYMS["x"])
        distinct = len(set(sympy.real_roots(sp)))
        assert sturm_count(p) == distinct
        sqf_degree = sympy.degree(sympy.sqf_part(sp), SYMS["x"])
        assert is_real_rooted(p) == (distinct == sqf_degree)


def test_oracle_agreement_2000():
    rng = random.Random(7)
    for _ in range(2000):
        p = _random_poly(rng)
        iso = isolate_roots(p, Fraction(1, 2**10))
        counted = sum(iso.multiplicities)
        assert is_real_rooted(p) == (counted == p.degree)
        assert len(iso) == sturm_count(p)
        assert real_roots_with_multiplicity(p) == counted
        if p.degree == 3:
            assert (classify_cubic(p) is CubicClass.ALL_REAL) == is_real_rooted(p)
        if p.degree == 4:
            assert classify_quartic(p).all_real == is_real_rooted(p)


# -- isolation ----------------------------------------------------------------------------


def test_isolate_sqrt2():
    iso = isolate_roots(X * X - 2, Fraction(1, 1000))
    assert len(iso) == 2
    (a, b), (c, d) = iso.intervals
    assert b - a <= Fraction(1, 1000) and d - c <= Fraction(1, 1000)
    assert a * a < 2 < b * b or (a * a > 2 > b * b)
    assert a < 0 < c
    assert c * c <= 2 <= d * d


def test_isolate_legendre2():
    iso = isolate_roots(legendre(2), Fraction(1, 2**30))
    for lo, hi in iso.intervals:
        assert (3 * lo * lo - 1) * (3 * hi * hi - 1) <= 0


def test_isolate_single_root_at_zero():
    iso = isolate_roots(X)
    assert len(iso) == 1
    lo, hi = iso.intervals[0]
    assert lo <= 0 <= hi


def test_intervals_disjoint_and_sorted(rng):
    for _ in range(100):
        p = _linear_product(rng, rng.randint(1, 8))
        iso = isolate_roots(p)
        for (a, b), (c, d) in zip(iso.intervals, iso.intervals[1:]):
            assert b < c
        bound = cauchy_bound(p)
        assert all(-bound < lo and hi < bound for lo, hi in iso.intervals)


def test_multiplicities():
    iso = isolate_roots((X - 1) ** 3 * (X + Fraction(1, 2)) ** 2 * (X * X + 1))
    assert list(iso.multiplicities) == [2, 3]


# -- interlacing ----------------------------------------------------------------------------


def test_interlace_examples():
    assert interlace_check(legendre(2), legendre(1))
    # roots -2, -1, 1, 2 read q, p, p, q: not alternating
    assert not interlace_check(X * X - 1, X * X - 4)
    assert not interlace_check(X, X)
    assert interlace_check(X * X - 4, X)


def test_interlace_errors():
    with pytest.raises(ValueError):
        interlace_check(X**3 - X, X + 5 - X)  # constant vs cubic
    with pytest.raises(ValueError):
        interlace_check(X * X + 1, X)


# -- resultants and discriminants ---------------------------------------------------------


def test_resultant_examples():
    assert resultant(X - A, X - B) == A - B
    assert resultant(X**3 + 2, Poly([1])) == 1
    assert resultant(X * X + 1, X * X - 1) == 4


def test_resultant_multiplicative(rng):
    for _ in range(40):
        p, q, h = (_random_poly(rng, 4) for _ in range(3))
        assert resultant(p * q, h) == resultant(p, h) * resultant(q, h)


def test_resultant_against_sympy(rng):
    for _ in range(30):
        p, q = _random_poly(rng, 5), _random_poly(rng, 5)
        # sympy.resultant can disagree in sign with the Sylvester determinant; use the matrix itself
        want = sylvester(to_sympy(p), to_sympy(q), SYMS["x"]).det()
        assert sympy.Rational(*_ratio(resultant(p, q))) == want


def _ratio(v):
    v = Fraction(v)
    return v.numerator, v.denominator


def test_cubic_discriminant_formula():
    a, b, c, d = (Poly.gen(v) for v in "abcd")
    p = a * X**3 + b * X * X + c * X + d
    want = b * b * c * c - 4 * b**3 * d - 4 * a * c**3 + 18 * a * b * c * d - 27 * a * a * d * d
    assert discriminant(p) == want


def test_quadratic_discriminant():
    c = Poly.gen("c")
    assert discriminant(X * X + B * X + c) == B * B - 4 * c


def test_linear_sequence_discriminant():
    want = parse_poly("-108/125*(421 + 172*a + 20*a^2)", variables=("a",))
    assert discriminant(linear_image()) == want


def test_discriminant_against_sympy(rng):
    for _ in range(30):
        p = _random_poly(rng, 6)
        if p.degree < 2:
            continue
        assert sympy.Rational(*_ratio(discriminant(p))) == sympy.discriminant(to_sympy(p), SYMS["x"])


def test_discriminant_in_inner_variable():
    r = Poly.gen("r")
    p = X * r * r + 3 * r - X
    # as a polynomial in r: x r^2 + 3 r - x, discriminant 9 + 4x^2
    assert discriminant(p, "r") == 9 + 4 * X * X


def test_discriminant_errors():
    with pytest.raises(ValueError):
        discriminant(X + 1)


def test_discriminant_sign_law(rng):
    for _ in range(60):
        roots = rng.sample(range(-20, 20), 3)
        p = (X - roots[0]) * (X - roots[1]) * (X - roots[2])
        assert discriminant(p) > 0
        u, v = rng.randint(-9, 9), rng.randint(1, 9)
        q = (X - roots[0]) * ((X - u) ** 2 + v * v)
        assert discriminant(q) < 0


def test_products_preserve_real_rootedness(rng):
    for _ in range(100):
        p, q = _random_poly(rng, 4), _random_poly(rng, 4)
        assert is_real_rooted(p * q) == (is_real_rooted(p) and is_real_rooted(q))


# -- classifiers ---------------------------------------------------------------------------


def test_cubic_classes():
    assert classify_cubic(X**3 - X) is CubicClass.ALL_REAL
    assert classify_cubic(X**3 + X) is CubicClass.ONE_REAL_PAIR
    assert classify_cubic(linear_image().subs("a", 0)) is CubicClass.ONE_REAL_PAIR
    assert classify_cubic((X - 1) ** 2 * (X + 1)) is CubicClass.ALL_REAL
    with pytest.raises(ValueError):
        classify_cubic(X * X)


def test_quartic_classes():
    assert classify_quartic(X**4 - 5 * X * X + 4).tag is QuarticTag.ALL_REAL
    assert classify_quartic(X**4 + 1).tag is QuarticTag.NONE_REAL
    assert classify_quartic((X * X + 1) * (X * X - 1)).tag is QuarticTag.TWO_REAL_TWO_COMPLEX
    assert classify_quartic((X - 1) ** 2 * (X * X + 1)).tag is QuarticTag.DEGENERATE
    with pytest.raises(ValueError):
        classify_quartic(X**3)


def test_geometric_image_at_two_has_two_real_roots():
    # Negative discriminant: two real and two complex roots, not four complex ones.
    p = geometric_image(Fraction(2))
    cls = classify_quartic(p)
    assert cls.tag is QuarticTag.TWO_REAL_TWO_COMPLEX
    assert sturm_count(p) == 2 and cls.discriminant < 0
    assert not is_real_rooted(p)


def test_depressed_quartic_shift():
    p = 2 * (X - 1) ** 4 + 3 * (X - 1) ** 2 - (X - 1) + 5
    q, r, s = depressed_quartic(p)
    assert (q, r, s) == (Fraction(3, 2), Fraction(-1, 2), Fraction(5, 2))


# -- sign certificates -----------------------------------------------------------------------


def test_certify_sign():
    p = -(X - 1) ** 2 * (X * X + 1)
    assert certify_sign(p, -1, Fraction(-1), INF, lo_closed=True, allowed_zeros=(1,)).holds
    assert not certify_sign(p, -1, Fraction(-1), INF).holds
    assert not certify_sign(X - 3, 1, Fraction(0), Fraction(5)).holds
    assert certify_sign(X - 3, 1, Fraction(3), Fraction(5), hi_closed=True).holds
