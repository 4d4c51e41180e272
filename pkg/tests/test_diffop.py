import random
from fractions import Fraction
from math import factorial

import mpmath
import pytest

from mulseq.bases import HERMITE, LEGENDRE, STANDARD, laguerre
from mulseq.diffop import (
    W,
    DiffOpRep,
    Outcome,
    bb_falsify,
    quadratic_symbol_roots,
    sample_point,
    symbol,
    symbol_from_poly,
    to_diffop,
)
from mulseq.exact import GaussianRational, I, Poly, X
from mulseq.multseq import DiagonalOperator, apply_operator
from mulseq.numeric import aberth_ehrlich, mpf_to_fraction, precision_bits
from mulseq.sequences import Explicit, Geometric, PolynomialInK, constant, linear, quadratic

K = Poly.gen("k")
BETAS = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1)


def _rep(basis, seq, order=None):
    return to_diffop(DiagonalOperator(basis, seq), order)


def _lemma47():
    return symbol(_rep(LEGENDRE, quadratic(1, 1)))


# -- representations ----------------------------------------------------------------


def test_euler_operator():
    rep = _rep(STANDARD, PolynomialInK(K))
    assert rep.coeffs == (Poly(()), X) and rep.exact


def test_legendre_quadratic_operators():
    rep = _rep(LEGENDRE, quadratic(1, 0))
    assert rep.coeffs == (Poly(()), 2 * X, X * X - 1)
    rep = _rep(LEGENDRE, quadratic(1, 1))
    assert rep.coeffs == (Poly([1]), 2 * X, X * X - 1)
    assert rep.exact and rep.guard_order == 6


def test_identity_operator():
    rep = _rep(LEGENDRE, constant(1))
    assert rep.order == 0 and rep.coeffs == (Poly([1]),)


@pytest.mark.parametrize(
    "basis, seq, order",
    [
        (STANDARD, PolynomialInK(2 * K**3 + 1), None),
        (LEGENDRE, PolynomialInK((K * K + K) ** 2 - 3), None),
        # xD - D^2/2 and xD^2 + (a+1-x)D have eigenvalues k and -k, so degree d needs order 2d
        (HERMITE, quadratic(1, 1), 4),
        (laguerre(Fraction(1, 2)), PolynomialInK(K**3 - K), 6),
    ],
    ids=str,
)
def test_representation_reproduces_operator(basis, seq, order):
    op = DiagonalOperator(basis, seq)
    rep = to_diffop(op, order)
    assert rep.exact
    for n in range(rep.order + 7):
        assert rep.reproduces(op, n)
    rng = random.Random(3)
    p = Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(12)])
    assert rep.apply(p) == apply_operator(op, p)


@pytest.mark.parametrize(
    "basis, seq",
    [(LEGENDRE, PolynomialInK(K**4)), (LEGENDRE, quadratic(Fraction(1, 3), -2)), (HERMITE, quadratic(1, 1))],
    ids=str,
)
def test_truncation_reproduces_through_order_only(basis, seq):
    op = DiagonalOperator(basis, seq)
    rep = to_diffop(op)
    assert not rep.exact
    assert all(rep.reproduces(op, n) for n in range(rep.order + 1))
    assert not all(rep.reproduces(op, n) for n in range(rep.guard_order + 1))


def test_representation_is_unique_under_mutation():
    op = DiagonalOperator(LEGENDRE, quadratic(1, 1))
    rep = to_diffop(op)
    for k in range(rep.order + 1):
        for bump in (Poly([1]), X, X * X):
            coeffs = list(rep.coeffs)
            coeffs[k] = coeffs[k] + bump
            mutant = DiffOpRep(rep.order, tuple(coeffs))
            assert not all(mutant.reproduces(op, n) for n in range(rep.order + 1))


def test_infinite_order_operators_flagged():
    rep = _rep(LEGENDRE, linear(1), 3)
    assert not rep.exact
    assert rep.coeffs == (Poly([1]), X, Poly([Fraction(-1, 3)]), Fraction(2, 15) * X)
    # Hermite <k> is x D - D^2 / 2, so order one is not enough
    rep = _rep(HERMITE, PolynomialInK(K))
    assert not rep.exact
    rep = _rep(HERMITE, PolynomialInK(K), 2)
    assert rep.exact and rep.coeffs == (Poly(()), X, Poly([Fraction(-1, 2)]))


def test_to_diffop_errors():
    with pytest.raises(ValueError):
        _rep(LEGENDRE, Geometric(2))
    with pytest.raises(ValueError):
        _rep(LEGENDRE, quadratic(1, 1), -1)
    with pytest.raises(ValueError):
        _rep(LEGENDRE, Explicit((1, 2)), 3)
    rep = _rep(LEGENDRE, Explicit((1, 2, 3)), 1)
    assert rep.guard_order == 2


def test_table():
    assert _rep(LEGENDRE, quadratic(1, 1)).table() == [(0, "1"), (1, "2*x"), (2, "x^2 - 1")]


# -- symbols --------------------------------------------------------------------------


def test_symbol_examples():
    assert _lemma47().poly == (X * W) ** 2 - W * W + 2 * X * W + 1
    assert symbol(_rep(LEGENDRE, quadratic(1, 0))).poly == (X * X - 1) * W * W + 2 * X * W
    assert symbol(_rep(LEGENDRE, constant(1))).poly == Poly([1])


def test_symbol_from_poly_round_trip():
    F = (X * W) ** 2 - W * W + 2 * X * W + 1
    assert symbol_from_poly(F) == _lemma47()
    assert symbol_from_poly(F).degree_in_w == 2


def test_symbol_times_exponential_is_image_of_exponential():
    # n! [w^n] of F(x,w) e^{xw} is sum_k p_k x^{n-k} n!/(n-k)!; of T[e^{xw}] it is T[x^n]
    op = DiagonalOperator(LEGENDRE, quadratic(1, Fraction(1, 2)))
    F = symbol(to_diffop(op))
    for n in range(8):
        lhs = Poly(())
        for k, p in enumerate(F.coeffs[: n + 1]):
            lhs = lhs + p * X ** (n - k) * Fraction(factorial(n), factorial(n - k))
        assert lhs == apply_operator(op, X**n)


def test_lemma47_roots_at_i():
    r = quadratic_symbol_roots(_lemma47(), I)
    assert r.exact
    want = {GaussianRational(Fraction(1, 2), Fraction(-1, 2)), GaussianRational(Fraction(-1, 2), Fraction(-1, 2))}
    assert set(r.roots) == want
    assert all(w.im < 0 for w in r.roots)


def test_lemma47_roots_identity_at_50_points():
    sym = _lemma47()
    rng = random.Random(47)
    for _ in range(50):
        x0 = GaussianRational(Fraction(rng.randint(-50, 50), rng.randint(1, 9)), Fraction(rng.randint(1, 50), rng.randint(1, 9)))
        r = quadratic_symbol_roots(sym, x0)
        assert r.exact
        w1, w2 = r.roots
        assert {w1 * (x0 + 1), w2 * (x0 - 1)} == {1} or {w1 * (x0 - 1), w2 * (x0 + 1)} == {1}
        assert all(w.im < 0 for w in r.roots)


def test_trivial_symbol_roots():
    sym = symbol_from_poly(W * W - 1)
    for x0 in (I, GaussianRational(3, 5), GaussianRational(Fraction(-1, 7), 2)):
        assert set(quadratic_symbol_roots(sym, x0, "plus").roots) == {GaussianRational(1), GaussianRational(-1)}


def _mpc(z):
    return mpmath.mpc(mpmath.mpf(z.re.numerator) / z.re.denominator, mpmath.mpf(z.im.numerator) / z.im.denominator)


def test_half_beta_roots_match_high_precision_oracle():
    sym = symbol(_rep(LEGENDRE, quadratic(1, Fraction(1, 2))))
    r = quadratic_symbol_roots(sym, 2 * I)
    c0, c1, c2 = r.coeffs
    # F(x, -w) = (x^2-1) w^2 - 2x w + 1/2 at x = 2i
    assert (c2, c1, c0) == (GaussianRational(-5), GaussianRational(0, -4), GaussianRational(Fraction(1, 2)))
    assert r.discriminant == GaussianRational(-6)
    assert r.roots is None  # -6 is not a square of a Gaussian rational
    with mpmath.workdps(40):
        a, b, c = _mpc(c2), _mpc(c1), _mpc(c0)
        sq = mpmath.sqrt(b * b - 4 * a * c)
        oracle = [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]
        assert all(z.imag <= 0 for z in oracle)
        ctx = mpmath.MPContext()
        ctx.prec = 256
        ours = aberth_ehrlich([ctx.mpc(0.5), ctx.mpc(0, -4), ctx.mpc(-5)], ctx)
        for z in ours:
            assert min(abs(mpmath.mpc(z.real, z.imag) - w) for w in oracle) < mpmath.mpf(10) ** -30


def test_symbol_roots_errors():
    with pytest.raises(ValueError):
        quadratic_symbol_roots(symbol_from_poly(W**3), I)
    # leading coefficient x^2 - 1 vanishes at x0 = 1
    with pytest.raises(ValueError):
        quadratic_symbol_roots(_lemma47(), GaussianRational(1))
    with pytest.raises(ValueError):
        _lemma47().at(I, "sideways")


# -- falsifier ------------------------------------------------------------------------


def test_sample_points_upper_half_plane():
    pts = [sample_point(42, i) for i in range(500)]
    assert all(p.im > 0 for p in pts)
    assert pts == [sample_point(42, i) for i in range(500)]
    assert pts[100] != sample_point(43, 100)


@pytest.mark.parametrize("beta", BETAS, ids=str)
def test_falsifier_resists_quadratic_sequences(beta):
    res = bb_falsify(symbol(_rep(LEGENDRE, quadratic(1, beta))), 500, 42)
    assert res.outcome is Outcome.NO_ZERO and not res.counterexamples


def test_lemma47_no_zero_found():
    res = bb_falsify(_lemma47(), 500, 42, orientation="minus")
    assert res.outcome is Outcome.NO_ZERO


def test_linear_sequence_counterexample():
    sym = symbol(_rep(LEGENDRE, linear(1), 3))
    res = bb_falsify(sym, 500, 42)
    assert res.found and len(res.counterexamples) == 2
    for c in res.counterexamples:
        assert c.verify(sym)
        assert c.x0.im > 0 and c.w0.im > c.margin


def test_constructed_violation():
    sym = symbol_from_poly(W * W + 1)
    res = bb_falsify(sym, 10, 0)
    assert res.found
    c = res.counterexamples[0]
    assert c.verify(sym) and abs(complex(c.w0) - 1j) < 1e-50


@pytest.mark.parametrize("beta", (Fraction(-1, 2), Fraction(3, 2)), ids=str)
def test_outside_beta_recorded(beta):
    # outcome is recorded, not asserted: these are classified by certified witnesses instead
    res = bb_falsify(symbol(_rep(LEGENDRE, quadratic(1, beta))), 100, 42)
    assert res.outcome in (Outcome.NO_ZERO, Outcome.COUNTEREXAMPLE)
    assert all(c.verify(symbol(_rep(LEGENDRE, quadratic(1, beta)))) for c in res.counterexamples)


def test_constant_symbol_is_vacuous():
    res = bb_falsify(symbol(_rep(LEGENDRE, constant(3))), 5)
    assert res.outcome is Outcome.NO_ZERO and "constant" in res.diagnostics["note"]


def test_falsifier_errors():
    with pytest.raises(ValueError):
        bb_falsify(_lemma47(), 0)
    with pytest.raises(ValueError):
        bb_falsify(_lemma47(), 5, orientation="up")


def test_falsifier_is_deterministic():
    sym = symbol(_rep(LEGENDRE, linear(1), 3))
    assert bb_falsify(sym, 200, 7).to_dict() == bb_falsify(sym, 200, 7).to_dict()


# -- numeric layer ------------------------------------------------------------------------


def test_precision_env(monkeypatch):
    monkeypatch.delenv("MULSEQ_PRECISION_BITS", raising=False)
    assert precision_bits() == 256
    monkeypatch.setenv("MULSEQ_PRECISION_BITS", "128")
    assert precision_bits() == 128
    res = bb_falsify(symbol_from_poly(W * W + 1), 3)
    assert res.diagnostics["precision_bits"] == 128 and res.found
    monkeypatch.setenv("MULSEQ_PRECISION_BITS", "32")
    with pytest.raises(ValueError):
        precision_bits()


def test_aberth_ehrlich_against_known_roots():
    ctx = mpmath.MPContext()
    ctx.prec = 200
    # (w - 1)(w + 2)(w - i)
    coeffs = [ctx.mpc(0, 2), ctx.mpc(-2, -1), ctx.mpc(1, -1), ctx.mpc(1)]
    roots = sorted(aberth_ehrlich(coeffs, ctx), key=lambda z: (float(z.real), float(z.imag)))
    for got, want in zip(roots, (-2, 1j, 1)):
        assert abs(got - want) < ctx.mpf(2) ** -180


def test_mpf_to_fraction_keeps_precision():
    ctx = mpmath.MPContext()
    ctx.prec = 200
    v = ctx.mpf(1) / 3
    f = mpf_to_fraction(v)
    assert abs(f - Fraction(1, 3)) < Fraction(1, 2**195)
    assert mpf_to_fraction(ctx.mpf(0)) == 0
