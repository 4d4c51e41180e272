import os
import random
from fractions import Fraction

import pytest
from hypothesis import settings
import sympy

from mulseq.exact import Poly

settings.register_profile("default", deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Lines printed by the acceptance module, echoed in the terminal summary.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


# -- independent oracle: sympy ---------------------------------------------------


SYMS = {name: sympy.Symbol(name) for name in ("x", "w", "k", "a", "b", "c", "d", "r", "t")}


def to_sympy(p):
    """Nested Poly or scalar -> sympy expression, built from the term map."""
    if not isinstance(p, Poly):
        return sympy.Rational(Fraction(p).numerator, Fraction(p).denominator)
    expr = sympy.Integer(0)
    for key, val in p.terms().items():
        mono = sympy.Rational(val.numerator, val.denominator)
        for var, e in key:
            mono *= SYMS[var] ** e
        expr += mono
    return sympy.expand(expr)


def sym_equal(p, expr):
    return sympy.expand(to_sympy(p) - expr) == 0


# -- random polynomials ------------------------------------------------------------


def rand_fraction(rng, bound=100):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_poly(rng, max_degree=6, bound=100, var="x"):
    deg = rng.randint(0, max_degree)
    return Poly([rand_fraction(rng, bound) for _ in range(deg + 1)], var)


@pytest.fixture
def rng():
    return random.Random(20240601)
