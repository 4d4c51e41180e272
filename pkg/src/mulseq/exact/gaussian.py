"""Exact complex numbers with rational real and imaginary parts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def _frac(v):
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True, eq=False)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        result = GaussianRational(1)
        for _ in range(n):
            result = result * self
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        mag = abs(self.im)
        im = "i" if mag == 1 else f"{mag}*i"
        if not self.re:
            return ("-" if self.im < 0 else "") + im
        return f"{self.re} {sign} {im}"


I = GaussianRational(0, 1)


def rational_sqrt(q):
    """Exact square root of a non-negative rational, or ``None`` if irrational."""
    q = _frac(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z):
    """A square root of ``z`` in Q(i) if one exists, else ``None``.

    The returned root has non-negative real part (positive imaginary part
    when the real part vanishes).
    """
    z = GaussianRational._lift(z)
    if not z:
        return GaussianRational(0)
    modulus = rational_sqrt(z.norm())
    if modulus is None:
        return None
    p = rational_sqrt((modulus + z.re) / 2)
    q = rational_sqrt((modulus - z.re) / 2)
    if p is None or q is None:
        return None
    if z.im < 0:
        q = -q
    root = GaussianRational(p, q)
    if root * root != z:
        return None
    return root
