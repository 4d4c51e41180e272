"""Power series in ``t`` with polynomial-in-``x`` coefficients, truncated at a fixed order."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly


@dataclass(frozen=True)
class TruncatedSeries2:
    order: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(c if isinstance(c, Poly) else Poly((c,)) for c in self.coeffs)
        if len(cs) > self.order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        cs = cs + (Poly(()),) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_polys(cls, coeffs, order):
        return cls(order, tuple(coeffs[: order + 1]))

    def _check(self, other):
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(f"truncation order mismatch: {self.order} vs {other.order}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries2(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries2):
            return TruncatedSeries2(self.order, tuple(c * other for c in self.coeffs))
        return series_mul_truncate(self, other)

    def __rmul__(self, other):
        return TruncatedSeries2(self.order, tuple(c * other for c in self.coeffs))

    def __getitem__(self, k):
        return self.coeffs[k]

    def is_one(self):
        return self.coeffs[0] == 1 and all(not c for c in self.coeffs[1:])


def series_mul_truncate(a, b):
    """Cauchy product of two series, dropping every power of ``t`` above the order."""
    a._check(b)
    n = a.order
    out = []
    for k in range(n + 1):
        acc = Poly(())
        for i in range(k + 1):
            if a.coeffs[i] and b.coeffs[k - i]:
                acc = acc + a.coeffs[i] * b.coeffs[k - i]
        out.append(acc)
    return TruncatedSeries2(n, tuple(out))
