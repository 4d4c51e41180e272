"""Registry of named reproduction experiments.

Each procedure takes a seed and returns ``(computed, expected, matched)``
with JSON-ready values.  Experiments with provenance ``OPEN`` are
report-only and never gate a suite.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..bases import (
    HERMITE,
    LEGENDRE,
    STANDARD,
    expand_in_basis,
    legendre,
    legendre_ode_residual,
    legendre_star_residual,
    orthogonality_integral,
    parity_reflect,
    rodrigues_check,
)
from ..diffop import Outcome, bb_falsify, quadratic_symbol_roots, symbol, to_diffop
from ..exact import GaussianRational, Poly, TruncatedSeries2, X, parse_poly, series_mul_truncate
from ..multseq import (
    DiagonalOperator,
    TestFamily,
    apply_operator,
    basis_ms_test,
    classical_ms_test,
    classify_quadratic_legendre,
    max_b_search,
    quadratic_classical_region,
    structural_checks,
)
from ..roots import classify_cubic, classify_quartic, interlace_check, resultant
from ..sequences import Explicit, FallingFactorial, Geometric, PolynomialInK, TriangularFactorial, constant, parse_sequence, quadratic
from . import cases

PAPER, TRIVIAL, DERIVED, OPEN = "PAPER", "TRIVIAL", "DERIVED", "OPEN"


@dataclass(frozen=True)
class Experiment:
    id: str
    description: str
    procedure: object
    provenance: str
    tags: tuple = ()
    tolerance: str = "exact"

    @property
    def report_only(self):
        return self.provenance == OPEN


REGISTRY: dict = {}


def experiment(id, description, provenance, tags=(), tolerance="exact"):
    def wrap(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate experiment id {id!r}")
        base = {PAPER: "paper", TRIVIAL: "trivial", DERIVED: "derived", OPEN: "open-questions"}[provenance]
        REGISTRY[id] = Experiment(id, description, fn, provenance, (base,) + tuple(tags), tolerance)
        return fn

    return wrap


def _strs(values):
    return [str(v) for v in values]


def _verdict_summary(v):
    out = {"status": v.status.value}
    if v.scope is not None:
        out["scope"] = v.scope
    if v.witness is not None:
        out["witness"] = str(v.witness)
        out["transform"] = str(v.transform)
    return out


# -- published computations --------------------------------------------------------------


@experiment("legendre-expansion", "Legendre coordinates of (1+x)^3", PAPER, ("bases",))
def _legendre_expansion(seed):
    got = expand_in_basis((1 + X) ** 3, LEGENDRE)
    want = [Fraction(2), Fraction(18, 5), Fraction(2), Fraction(2, 5)]
    return _strs(got), _strs(want), got == want


@experiment("linear-disc", "discriminant of the image of (1+x)^3 under <k + a>", PAPER, ("linear",))
def _linear_disc(seed):
    got = cases.linear_discriminant()
    want = cases.expected_linear_discriminant()
    return str(got), str(want), got == want


@experiment("linear-cubic-class", "the linear image is never real-rooted at sampled a", PAPER, ("linear",))
def _linear_cubic_class(seed):
    img = cases.linear_image()
    got = {str(a): classify_cubic(img.subs("a", a)).value for a in (-2, -1, 0, 1, 2, 10)}
    want = {k: "OneRealPair" for k in got}
    return got, want, got == want


def _grid(lo, hi, steps):
    return [lo + (hi - lo) * Fraction(i, steps - 1) for i in range(steps)]


@experiment("classical-region", "quadratic classical region against Jensen tests on a 21x21 grid", PAPER, ("quadratic",))
def _classical_region(seed):
    counts = {"in_region": 0, "in_region_pass": 0, "outside": 0, "outside_certified_fail": 0, "outside_pass_at_degree_8": 0}
    violations = []
    for a in _grid(Fraction(-2), Fraction(3), 21):
        for b in _grid(Fraction(0), Fraction(3), 21):
            region = quadratic_classical_region(a, b)
            v = classical_ms_test(quadratic(a, b), 8)
            if region:
                counts["in_region"] += 1
                counts["in_region_pass"] += v.passed
                if not v.passed:
                    violations.append([str(a), str(b)])
            else:
                counts["outside"] += 1
                counts["outside_certified_fail"] += v.failed
                counts["outside_pass_at_degree_8"] += v.passed
    counts["violations"] = violations
    want = {"in_region_pass": counts["in_region"], "violations": []}
    return counts, want, not violations


QUAD_PASS = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
QUAD_FAIL = [(Fraction(0), Fraction(10)), (Fraction(2), Fraction(1)), (Fraction(1), Fraction(3, 2)), (Fraction(-1), Fraction(0))]


@experiment("quadratic-legendre", "<k^2 + a k + b>: pass for a = 1, b in [0,1]; certified failures elsewhere", PAPER, ("quadratic",))
def _quadratic_legendre(seed):
    fam = TestFamily(seed=seed)
    computed, ok = {}, True
    for b in QUAD_PASS:
        v = basis_ms_test(quadratic(1, b), LEGENDRE, 8, fam)
        computed[f"1,{b}"] = {"closed_form": classify_quadratic_legendre(1, b), **_verdict_summary(v)}
        ok &= v.passed and classify_quadratic_legendre(1, b)
    for a, b in QUAD_FAIL:
        seq = quadratic(a, b)
        v = basis_ms_test(seq, LEGENDRE, 8, fam)
        computed[f"{a},{b}"] = {"closed_form": classify_quadratic_legendre(a, b), **_verdict_summary(v)}
        ok &= v.failed and v.reverify(DiagonalOperator(LEGENDRE, seq)) and not classify_quadratic_legendre(a, b)
    want = {f"1,{b}": "CertifiedPass" for b in QUAD_PASS}
    want.update({f"{a},{b}": "CertifiedFail" for a, b in QUAD_FAIL})
    return computed, want, ok


@experiment("case1-nested", "nested discriminants, b = r(1-a)", PAPER, ("quadratic", "nested"))
def _case1(seed):
    rep = cases.case12_nested_discriminants(1)
    want = {"delta_r": "negative", "d_dr_at_r0": "positive", "delta_x_at_r1": "negative"}
    return rep, want, rep["ok"]


@experiment("case2-nested", "nested discriminants, b = r a", PAPER, ("quadratic", "nested"))
def _case2(seed):
    rep = cases.case12_nested_discriminants(2)
    want = {"delta_r": "negative", "d_dr_at_r0": "positive", "delta_x_at_r2": "negative"}
    return rep, want, rep["ok"]


@experiment("case3-thresholds", "thresholds for <k^2 + b>", PAPER, ("quadratic",), tolerance="5e-4")
def _case3(seed):
    rep = cases.case3_thresholds()
    want = {"cubic_root": "9.8149", "quartic_root": "11.7649", "overlap_nonempty": True}
    return rep, want, rep["ok"]


@experiment("geom-disc", "degree-24 discriminant of the geometric image of (1+x)^4", PAPER, ("geometric",))
def _geom_disc(seed):
    got = cases.geometric_discriminant()
    want = cases.expected_geometric_discriminant()
    return str(got), str(want), got == want


@experiment("geom-witness", "geometric sequences: (x+r)^4 witnesses for |r| > 1, passes for |r| = 1", PAPER, ("geometric",))
def _geom_witness(seed):
    computed, ok = {}, True
    for r in (Fraction(2), Fraction(-2), Fraction(3, 2)):
        cand = (X + r) ** 4
        v = basis_ms_test(Geometric(r), LEGENDRE, 10, TestFamily(seed=seed, candidates=(cand,)))
        computed[str(r)] = _verdict_summary(v)
        ok &= v.failed and v.witness == cand and v.reverify(DiagonalOperator(LEGENDRE, Geometric(r)))
    for r in (1, -1):
        v = basis_ms_test(Geometric(r), LEGENDRE, 10, TestFamily(seed=seed))
        computed[str(r)] = _verdict_summary(v)
        ok &= v.passed
    want = {"2": "CertifiedFail", "-2": "CertifiedFail", "3/2": "CertifiedFail", "1": "CertifiedPass", "-1": "CertifiedPass"}
    return computed, want, ok


@experiment("p-tilde-r2", "root structure of the displayed geometric image at r = 2", DERIVED, ("geometric",))
def _p_tilde(seed):
    cls = classify_quartic(cases.geometric_image(Fraction(2)))
    return cls.tag.value, "TwoRealTwoComplex", cls.tag.value == "TwoRealTwoComplex"


DIFFOP_CASES = (
    ("k", STANDARD, ("0", "x")),
    ("k^2+k", LEGENDRE, ("0", "2*x", "x^2 - 1")),
    ("k^2+k+1", LEGENDRE, ("1", "2*x", "x^2 - 1")),
)


@experiment("diffop-reps", "differential-operator forms of three diagonal operators", PAPER, ("diffop",))
def _diffop_reps(seed):
    computed, want, ok = {}, {}, True
    for text, basis, expected in DIFFOP_CASES:
        rep = to_diffop(DiagonalOperator(basis, parse_sequence(text)))
        key = f"{text}/{basis}"
        computed[key] = [str(c) for c in rep.coeffs]
        want[key] = list(expected)
        ok &= rep.exact and computed[key] == want[key]
    return computed, want, ok


def lemma47_symbol():
    return symbol(to_diffop(DiagonalOperator(LEGENDRE, parse_sequence("k^2+k+1"))))


def upper_half_plane_points(count, seed):
    rng = random.Random(seed)
    return [
        GaussianRational(Fraction(rng.randint(-300, 300), rng.randint(1, 30)), Fraction(rng.randint(1, 300), rng.randint(1, 30)))
        for _ in range(count)
    ]


def lemma47_roots_ok(sym, x0) -> bool:
    """Both roots exact, one with ``w (x0 + 1) = 1`` and one with ``w (x0 - 1) = 1``, each with ``Im w < 0``."""
    roots = quadratic_symbol_roots(sym, x0).roots
    if not roots or len(roots) != 2:
        return False
    plus = [w * (x0 + 1) == 1 for w in roots]
    minus = [w * (x0 - 1) == 1 for w in roots]
    return sorted(plus) == [False, True] and all(p or m for p, m in zip(plus, minus)) and all(w.im < 0 for w in roots)


@experiment("lemma47-symbol", "symbol of (x^2-1)D^2 + 2xD + 1 and its closed-form roots", PAPER, ("diffop",))
def _lemma47(seed):
    sym = lemma47_symbol()
    want_poly = parse_poly("(x*w)^2 - w^2 + 2*x*w + 1", variables=("x", "w"))
    good = sum(lemma47_roots_ok(sym, x0) for x0 in upper_half_plane_points(50, seed))
    computed = {"symbol": str(sym.poly), "points_with_roots_1/(x+-1)_and_Im<0": good}
    want = {"symbol": str(want_poly), "points_with_roots_1/(x+-1)_and_Im<0": 50}
    return computed, want, sym.poly == want_poly and good == 50


@experiment("prop48-falsifier", "falsifier finds no symbol zeros for <k^2 + k + b>, b in [0,1]", PAPER, ("diffop",))
def _prop48(seed):
    computed, ok = {}, True
    for b in QUAD_PASS:
        res = bb_falsify(symbol(to_diffop(DiagonalOperator(LEGENDRE, quadratic(1, b)))), 500, seed)
        computed[str(b)] = res.outcome.value
        ok &= res.outcome is Outcome.NO_ZERO
    recorded = {}
    for b in (Fraction(-1, 2), Fraction(3, 2)):
        res = bb_falsify(symbol(to_diffop(DiagonalOperator(LEGENDRE, quadratic(1, b)))), 500, seed)
        recorded[str(b)] = res.outcome.value
    computed["recorded_outside_[0,1]"] = recorded
    want = {str(b): Outcome.NO_ZERO.value for b in QUAD_PASS}
    return computed, want, ok


def structural_corpus():
    seqs = [quadratic(1, b) for b in _grid(Fraction(0), Fraction(1), 9)]
    seqs += [Geometric(1), Geometric(-1)]
    seqs += [
        Explicit([1] * 17),
        Explicit([1, 1] + [0] * 15),
        Explicit([0, 0, 0, 2, 3] + [0] * 12),
        Explicit([0] * 7 + [-1, 4] + [0] * 8),
    ]
    return seqs


@experiment("structural-suite", "Legendre passes imply Hermite and classical passes, monotone magnitude and Turan", PAPER, ("structural",))
def _structural(seed):
    fam = TestFamily(seed=seed)
    rows, ok = {}, True
    for seq in structural_corpus():
        leg = basis_ms_test(seq, LEGENDRE, 8, fam)
        row = {"legendre": leg.status.value}
        if leg.passed:
            herm = basis_ms_test(seq, HERMITE, 8, fam)
            cls = classical_ms_test(seq, 8)
            rep = structural_checks(seq, 16)
            mono = rep.monotone_magnitude.passed or rep.trivial
            row.update(hermite=herm.status.value, classical=cls.status.value, turan=rep.turan.passed, monotone=mono, trivial=rep.trivial)
            ok &= herm.passed and cls.passed and rep.turan.passed and mono
        else:
            ok = False
        rows[str(seq)] = row
    return rows, "every corpus sequence passes all four checks", ok


@experiment("basis-identities", "Rodrigues, Legendre ODE, orthogonality, interlacing, generating function, n <= 12", PAPER, ("bases",))
def _identities(seed):
    n_max = 12
    got = {
        "rodrigues": all(rodrigues_check(n) for n in range(n_max + 1)),
        "ode": all(not legendre_ode_residual(n) for n in range(n_max + 1)),
        "orthogonality": all(
            orthogonality_integral(m, n) == (Fraction(2, 2 * n + 1) if m == n else 0)
            for m in range(n_max + 1)
            for n in range(n_max + 1)
        ),
        "interlacing": all(interlace_check(legendre(n), legendre(n - 1)) for n in range(2, n_max + 1)),
        "generating_function": all(generating_function_identity(n) for n in range(n_max + 1)),
    }
    return got, {k: True for k in got}, all(got.values())


def generating_function_identity(n: int) -> bool:
    """``(1 - 2xt + t^2) S_n^2 = 1 mod t^(n+1)`` with ``S_n`` the truncated Legendre generating series."""
    s = TruncatedSeries2(n, [legendre(k) for k in range(n + 1)])
    kernel = TruncatedSeries2(n, [Poly((1,)), -2 * X, Poly((1,))][: n + 1])
    return series_mul_truncate(kernel, series_mul_truncate(s, s)).is_one()


@experiment("max-b-n2", "largest b with Le_2 + b real-rooted", DERIVED, ("bases",))
def _max_b(seed):
    lo, hi = max_b_search(2, Fraction(1, 2**20))
    return [str(lo), str(hi)], "interval containing 1/2", lo <= Fraction(1, 2) < hi and lo > 0


@experiment("star-equation", "the (x^2+1) variant of the Legendre equation fails for n >= 1", DERIVED, ("bases", "consistency"))
def _star(seed):
    got = {n: bool(legendre_star_residual(n)) for n in range(13)}
    want = {n: n >= 1 for n in range(13)}
    return {str(k): v for k, v in got.items()}, {str(k): v for k, v in want.items()}, got == want


@experiment("parity-reflect", "reflecting (1+x)^3 flips the sign of its odd Legendre coordinates", DERIVED, ("bases",))
def _parity(seed):
    got = expand_in_basis(parity_reflect((1 + X) ** 3), LEGENDRE)
    want = [Fraction(2), Fraction(-18, 5), Fraction(2), Fraction(-2, 5)]
    return _strs(got), _strs(want), got == want


@experiment("disc-resultant", "linear discriminant equals -Res(p, p')/lc for the cubic image", DERIVED, ("linear", "consistency"))
def _disc_resultant(seed):
    img = cases.linear_image()
    lc = img.coeffs[-1]
    # n = 3: disc = (-1)^{n(n-1)/2} Res(p, p') / lc
    got = -resultant(img, img.diff()) / lc
    want = cases.linear_discriminant()
    return str(got), str(want), got == want


@experiment("identity-seq", "constant sequence leaves (1+x)^5 fixed", TRIVIAL, ("bases",))
def _identity(seed):
    p = (1 + X) ** 5
    got = apply_operator(DiagonalOperator(LEGENDRE, constant(1)), p)
    return str(got), str(p), got == p


# -- open questions (report-only) -------------------------------------------------------


CUBIC_GRID = (-2, -1, 0, 1, 2)


@experiment("cubic-search", "monic cubics k^3 + a k^2 + b k + c surviving the Legendre test at degree 8", OPEN, ("cubic",))
def _cubic_search(seed):
    k = Poly.gen("k")
    fam = TestFamily(seed=seed)
    survivors, failures = [], 0
    for a in CUBIC_GRID:
        for b in CUBIC_GRID:
            for c in CUBIC_GRID:
                seq = PolynomialInK(k**3 + a * k * k + b * k + c)
                v = basis_ms_test(seq, LEGENDRE, 8, fam)
                if v.passed:
                    survivors.append(str(seq))
                else:
                    failures += 1
    computed = {"grid": list(CUBIC_GRID), "tested": len(CUBIC_GRID) ** 3, "certified_failures": failures, "survivors": survivors}
    return computed, {"survivors": []}, not survivors


@experiment("tri-factorial", "tri(n) sequences through the Legendre test at degree 10", OPEN, ("factorial",))
def _tri(seed):
    fam = TestFamily(seed=seed)
    got = {str(n): _verdict_summary(basis_ms_test(TriangularFactorial(n), LEGENDRE, 10, fam)) for n in range(5)}
    return got, {"counterexamples": 0}, all(v["status"] == "CertifiedPass" for v in got.values())


@experiment("ff-not-legendre", "certified witness that k(k-1) fails the Legendre test", OPEN, ("factorial",))
def _ff(seed):
    seq = FallingFactorial(2)
    v = basis_ms_test(seq, LEGENDRE, 8, TestFamily(seed=seed))
    ok = v.failed and v.reverify(DiagonalOperator(LEGENDRE, seq))
    return _verdict_summary(v), "CertifiedFail with a re-verified witness", ok
