"""Exact real-root certification: Sturm counting and isolation, interlacing,
Sylvester/Bareiss resultants, discriminants and the cubic/quartic classifiers.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import (
    Poly,
    coefficients_in,
    divrem,
    poly_gcd,
    rational_content,
    squarefree_decomposition,
    squarefree_part,
)

INF = math.inf
DEFAULT_WIDTH = Fraction(1, 2**20)


def _require_nonzero(p):
    if not isinstance(p, Poly) or not p:
        raise ValueError("operation undefined for the zero polynomial")


def _sign(v):
    return (v > 0) - (v < 0)


@functools.lru_cache(maxsize=4096)
def _integer_coeffs(coeffs):
    den = math.lcm(*(Fraction(c).denominator for c in coeffs))
    return tuple(int(c * den) for c in coeffs)


def _sign_eval(p, point):
    """Sign of ``p(point)`` for rational ``point``, by integer homogeneous Horner."""
    point = Fraction(point)
    a, b = point.numerator, point.denominator
    acc = 0
    bpow = 1
    for c in reversed(_integer_coeffs(p.coeffs)):
        acc = acc * a + c * bpow
        bpow *= b
    return _sign(acc)


# -- Sturm sequences ---------------------------------------------------------


def _positive_scale(p):
    # dividing by |lc| keeps sign behaviour and stops coefficient growth
    lc = p.coeffs[-1]
    return p / abs(lc) if lc not in (1, -1) else p


def sturm_chain(p: Poly):
    """Sturm chain of the square-free part of ``p``.

    Terms after the first two are negated remainders, each rescaled by a
    positive constant.
    """
    _require_nonzero(p)
    s = squarefree_part(p)
    chain = [s]
    if len(s.coeffs) > 1:
        chain.append(_positive_scale(s.diff()))
        while True:
            r = divrem(chain[-2], chain[-1])[1]
            if not r:
                break
            chain.append(_positive_scale(-r))
    return chain


def _sign_at(p, point):
    if point == INF:
        return _sign(p.coeffs[-1])
    if point == -INF:
        s = _sign(p.coeffs[-1])
        return s if (len(p.coeffs) - 1) % 2 == 0 else -s
    return _sign_eval(p, point)


def sign_variations(chain, point) -> int:
    signs = [s for s in (_sign_at(q, point) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_with_chain(chain, lo, hi):
    if lo >= hi:
        return 0
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def sturm_count(p: Poly, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(lo, hi]``."""
    return _count_with_chain(sturm_chain(p), lo, hi)


def is_real_rooted(p: Poly) -> bool:
    """True iff every complex root of ``p`` is real (multiplicities allowed).

    Runs one Euclidean remainder sequence on ``p`` itself: its last term is
    gcd(p, p'), and the sign variations at plus/minus infinity count the
    distinct real roots, which must equal ``deg p - deg gcd``.
    """
    _require_nonzero(p)
    n = len(p.coeffs) - 1
    if n <= 1:
        return True
    a, b = p, _positive_scale(p.diff())
    lead_signs = [(_sign(a.coeffs[-1]), n), (_sign(b.coeffs[-1]), n - 1)]
    while True:
        r = divrem(a, b)[1]
        if not r:
            break
        a, b = b, _positive_scale(-r)
        lead_signs.append((_sign(b.coeffs[-1]), len(b.coeffs) - 1))
    g_deg = len(b.coeffs) - 1
    at_pos = [s for s, _ in lead_signs]
    at_neg = [s if d % 2 == 0 else -s for s, d in lead_signs]

    def var(signs):
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return var(at_neg) - var(at_pos) == n - g_deg


def cauchy_bound(p: Poly) -> Fraction:
    """``1 + max |a_i / a_n|``; every root has strictly smaller modulus."""
    _require_nonzero(p)
    lc = p.coeffs[-1]
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


# -- isolation -----------------------------------------------------------------


@dataclass(frozen=True)
class RootIsolation:
    """Sorted, pairwise disjoint closed intervals, each holding one distinct real root.

    An interval with ``lo == hi`` is an exact rational root; otherwise the
    root lies strictly inside and the polynomial is nonzero at both ends.
    """

    intervals: tuple
    multiplicities: tuple

    def __len__(self):
        return len(self.intervals)

    def midpoints(self):
        return [(lo + hi) / 2 for lo, hi in self.intervals]

    def contains(self, value) -> int:
        """Index of the interval containing ``value``, or -1."""
        for i, (lo, hi) in enumerate(self.intervals):
            if lo <= value <= hi:
                return i
        return -1


def _refine(s, chain, lo, hi, width):
    """Shrink ``(lo, hi]`` (one root of ``s`` inside) to width <= ``width``."""
    if not _sign_eval(s, hi):
        return hi, hi
    while not _sign_eval(s, lo):
        # lo is a neighbouring root; step inward with Sturm counts until it is not
        mid = (lo + hi) / 2
        if not _sign_eval(s, mid):
            return mid, mid
        if _count_with_chain(chain, lo, mid):
            hi = mid
        else:
            lo = mid
    # s is squarefree, so its single simple root in (lo, hi) is a sign change
    s_hi = _sign_eval(s, hi) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = _sign_eval(s, mid)
        if not v:
            return mid, mid
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _bisect_once(s, chain, lo, hi):
    mid = (lo + hi) / 2
    if not _sign_eval(s, mid):
        return mid, mid
    return (lo, mid) if _count_with_chain(chain, lo, mid) else (mid, hi)


def isolate_roots(p: Poly, precision=DEFAULT_WIDTH) -> RootIsolation:
    """Isolate the distinct real roots of ``p`` by Sturm-count bisection from the Cauchy bound."""
    _require_nonzero(p)
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    chain = sturm_chain(p)
    s = chain[0]
    if len(s.coeffs) <= 1:
        return RootIsolation((), ())
    bound = cauchy_bound(s)
    found = []
    stack = [(-bound, bound, _count_with_chain(chain, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = _count_with_chain(chain, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left))
    found.sort()
    ivs = [_refine(s, chain, lo, hi, precision) for lo, hi in found]
    # adjacent open intervals may still touch at a shared (non-root) endpoint
    i = 0
    while i + 1 < len(ivs):
        (a_lo, a_hi), (b_lo, b_hi) = ivs[i], ivs[i + 1]
        if a_hi < b_lo:
            i += 1
            continue
        if a_hi - a_lo >= b_hi - b_lo and a_lo != a_hi:
            ivs[i] = _bisect_once(s, chain, a_lo, a_hi)
        else:
            ivs[i + 1] = _bisect_once(s, chain, b_lo, b_hi)
    mults = []
    factors = squarefree_decomposition(p)
    if len(factors) == 1:
        return RootIsolation(tuple(ivs), (factors[0][1],) * len(ivs))
    chains = [(sturm_chain(f), m) for f, m in factors]
    for lo, hi in ivs:
        for fc, m in chains:
            if (lo == hi and not _sign_eval(fc[0], lo)) or (lo != hi and _count_with_chain(fc, lo, hi)):
                mults.append(m)
                break
    return RootIsolation(tuple(ivs), tuple(mults))


def real_roots_with_multiplicity(p: Poly) -> int:
    iso = isolate_roots(p, precision=Fraction(1))
    return sum(iso.multiplicities)


# -- interlacing ----------------------------------------------------------------


def interlace_check(p: Poly, q: Poly) -> bool:
    """True iff the real roots of ``p`` and ``q`` strictly alternate."""
    _require_nonzero(p)
    _require_nonzero(q)
    if abs(len(p.coeffs) - len(q.coeffs)) > 1:
        raise ValueError("interlacing needs degrees differing by at most one")
    if not (is_real_rooted(p) and is_real_rooted(q)):
        raise ValueError("interlacing is only defined for real-rooted polynomials")
    if len(poly_gcd(p, q).coeffs) > 1:
        return False
    if len(squarefree_part(p).coeffs) != len(p.coeffs) or len(squarefree_part(q).coeffs) != len(q.coeffs):
        return False
    iso = isolate_roots(p * q)
    labels = []
    for lo, hi in iso.intervals:
        in_p = (not p(lo)) if lo == hi else bool(sturm_count(p, lo, hi))
        labels.append(in_p)
    return all(a != b for a, b in zip(labels, labels[1:]))


# -- resultants and discriminants ----------------------------------------------


def _exact_quotient(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact Bareiss step")
        return q
    return a / b


def bareiss_det(matrix):
    """Determinant over an integral domain by fraction-free elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - mik * row_k[j]
                row_i[j] = _exact_quotient(num, prev) if num else 0
            row_i[k] = 0
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(cp, cq):
    """Sylvester matrix of two coefficient lists (lowest power first), ``p`` rows first."""
    m, n = len(cp) - 1, len(cq) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(cp)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(cq)):
            row[i + j] = c
        rows.append(row)
    return rows


def _to_int(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _resultant_coeffs(cp, cq):
    m, n = len(cp) - 1, len(cq) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    if m == 0:
        return cp[0] ** n
    if n == 0:
        return cq[0] ** m
    kp = _content_of(cp)
    kq = _content_of(cq)
    ip = [_to_int(c / kp) for c in cp]
    iq = [_to_int(c / kq) for c in cq]
    det = bareiss_det(sylvester_matrix(ip, iq))
    if isinstance(det, int):
        det = Fraction(det)
    return det * (kp**n * kq**m)


def _content_of(coeffs):
    num, den = 0, 1
    for c in coeffs:
        if c:
            k = rational_content(c)
            num = math.gcd(num, k.numerator)
            den = den * k.denominator // math.gcd(den, k.denominator)
    return Fraction(num, den) if num else Fraction(1)


def resultant(p, q, var=None):
    """Resultant with respect to ``var`` (default: outer variable of ``p``), as a Sylvester determinant."""
    if not p or not q:
        raise ValueError("resultant of the zero polynomial")
    var = var or (p.var if isinstance(p, Poly) else q.var)
    cp, cq = coefficients_in(p, var), coefficients_in(q, var)
    return _resultant_coeffs(cp, cq)


def discriminant(p, var=None):
    """``(-1)^(n(n-1)/2) Res(p, dp/dvar) / lc(p)`` for ``p`` of degree ``n >= 2`` in ``var``."""
    if not isinstance(p, Poly) or not p:
        raise ValueError("discriminant of the zero polynomial")
    var = var or p.var
    cp = coefficients_in(p, var)
    n = len(cp) - 1
    if n < 2:
        raise ValueError(f"discriminant needs degree >= 2 in {var!r}")
    lc = cp[-1]
    if not lc:
        raise ValueError("leading coefficient vanishes")
    dp = [c * i for i, c in enumerate(cp)][1:]
    res = _resultant_coeffs(cp, dp)
    disc = res / lc
    return -disc if (n * (n - 1) // 2) % 2 else disc


# -- cubic and quartic classifiers --------------------------------------------


class CubicClass(enum.Enum):
    ALL_REAL = "AllReal"
    ONE_REAL_PAIR = "OneRealPair"


class QuarticTag(enum.Enum):
    ALL_REAL = "AllReal"
    NONE_REAL = "NoneReal"
    TWO_REAL_TWO_COMPLEX = "TwoRealTwoComplex"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class QuarticClass:
    tag: QuarticTag
    q: Fraction
    r: Fraction
    s: Fraction
    discriminant: Fraction
    all_real: bool = field(default=False)


def _check_degree(p, n):
    if not isinstance(p, Poly) or len(p.coeffs) - 1 != n:
        raise ValueError(f"expected a polynomial of degree exactly {n}")


def classify_cubic(p: Poly) -> CubicClass:
    """Classify a real cubic by the sign of its discriminant; a zero discriminant goes to Sturm."""
    _check_degree(p, 3)
    disc = discriminant(p)
    if disc > 0:
        return CubicClass.ALL_REAL
    if disc < 0:
        return CubicClass.ONE_REAL_PAIR
    return CubicClass.ALL_REAL if is_real_rooted(p) else CubicClass.ONE_REAL_PAIR


def depressed_quartic(p: Poly):
    """``(q, r, s)`` of the monic depressed quartic ``z^4 + q z^2 + r z + s`` with ``z = x + b/(4a)``."""
    _check_degree(p, 4)
    e, d, c, b, a = p.coeffs
    B, C, D, E = b / a, c / a, d / a, e / a
    q = C - 3 * B**2 / 8
    r = D - B * C / 2 + B**3 / 8
    s = E - B * D / 4 + B**2 * C / 16 - 3 * B**4 / 256
    return q, r, s


def classify_quartic(p: Poly) -> QuarticClass:
    """Discriminant decision tree for quartics, cross-checked against an exact Sturm count."""
    _check_degree(p, 4)
    q, r, s = depressed_quartic(p)
    disc = discriminant(p)
    distinct_real = sturm_count(p)
    if disc > 0:
        tag = QuarticTag.ALL_REAL if (q < 0 and q * q - 4 * s > 0) else QuarticTag.NONE_REAL
        expected = 4 if tag is QuarticTag.ALL_REAL else 0
    elif disc < 0:
        tag, expected = QuarticTag.TWO_REAL_TWO_COMPLEX, 2
    else:
        return QuarticClass(QuarticTag.DEGENERATE, q, r, s, disc, is_real_rooted(p))
    if distinct_real != expected:
        raise ArithmeticError(f"quartic classifier disagrees with Sturm count ({tag.value} vs {distinct_real})")
    return QuarticClass(tag, q, r, s, disc, tag is QuarticTag.ALL_REAL)


# -- sign certification ------------------------------------------------------


@dataclass(frozen=True)
class SignCertificate:
    holds: bool
    sign: int
    interval: tuple
    roots_inside: int
    allowed_zeros: tuple
    samples: tuple
    reason: str = ""


def certify_sign(p: Poly, sign: int, lo=-INF, hi=INF, lo_closed=False, hi_closed=False, allowed_zeros=()):
    """Certify that ``p`` has constant ``sign`` on an interval, except at listed rational zeros.

    The count of distinct roots inside is exact (Sturm); the sign between
    consecutive breakpoints is read at one rational sample each.
    """
    _require_nonzero(p)
    lo = lo if lo in (-INF, INF) else Fraction(lo)
    hi = hi if hi in (-INF, INF) else Fraction(hi)

    def inside(z):
        return (lo < z or (lo_closed and z == lo)) and (z < hi or (hi_closed and z == hi))

    zeros = sorted(Fraction(z) for z in allowed_zeros if inside(Fraction(z)) and not p(Fraction(z)))
    roots = sturm_count(p, lo, hi)
    if hi != INF and not p(hi) and not hi_closed:
        roots -= 1
    if lo_closed and lo != -INF and not p(lo):
        roots += 1
    cert = dict(sign=sign, interval=(lo, hi), roots_inside=roots, allowed_zeros=tuple(zeros))
    if roots != len(zeros):
        return SignCertificate(False, samples=(), reason="unexpected roots inside the interval", **cert)
    breaks = [lo] + zeros + [hi]
    samples = []
    for a, b in zip(breaks, breaks[1:]):
        if a == -INF and b == INF:
            t = Fraction(0)
        elif a == -INF:
            t = b - 1
        elif b == INF:
            t = a + 1
        else:
            t = (a + b) / 2
        samples.append(t)
    ok = all(_sign(p(t)) == sign for t in samples)
    for end, closed in ((lo, lo_closed), (hi, hi_closed)):
        if closed and end not in (-INF, INF) and end not in zeros:
            ok = ok and _sign(p(end)) == sign
    return SignCertificate(ok, samples=tuple(samples), reason="" if ok else "wrong sign at a sample", **cert)
