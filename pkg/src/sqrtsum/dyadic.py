"""Closed intervals with dyadic endpoints.

An interval is stored as two integer mantissas sharing one binary exponent,
``[lo * 2**exp, hi * 2**exp]``. Sums, negation, integer scaling and products
of such intervals are exact, so the only rounding anywhere in the oracle is
the outward rounding done when a square root is enclosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class DyadicInterval:
    lo: int
    hi: int
    exp: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, value: int) -> "DyadicInterval":
        return cls(value, value, 0)

    @classmethod
    def enclose(cls, value: Fraction, bits: int) -> "DyadicInterval":
        """Smallest interval on the grid ``2**-bits`` that contains ``value``."""
        value = Fraction(value)
        scaled = value * (1 << bits) if bits >= 0 else value / (1 << -bits)
        lo = scaled.numerator // scaled.denominator
        hi = -((-scaled.numerator) // scaled.denominator)
        return cls(lo, hi, -bits)

    # endpoints

    @property
    def lower(self) -> Fraction:
        return _to_fraction(self.lo, self.exp)

    @property
    def upper(self) -> Fraction:
        return _to_fraction(self.hi, self.exp)

    @property
    def width(self) -> Fraction:
        return _to_fraction(self.hi - self.lo, self.exp)

    @property
    def midpoint(self) -> Fraction:
        return _to_fraction(self.lo + self.hi, self.exp - 1)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        value = Fraction(value)
        return self.lower <= value <= self.upper

    def contains_interval(self, other: "DyadicInterval") -> bool:
        return self.lower <= other.lower and other.upper <= self.upper

    def sign(self) -> int | None:
        """+1 or -1 when the interval excludes zero, 0 for the point [0, 0], else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    # arithmetic

    def _aligned(self, other: "DyadicInterval"):
        e = min(self.exp, other.exp)
        a, b = self.exp - e, other.exp - e
        return (self.lo << a, self.hi << a, other.lo << b, other.hi << b, e)

    def __add__(self, other):
        if isinstance(other, int):
            other = DyadicInterval.point(other)
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        alo, ahi, blo, bhi, e = self._aligned(other)
        return DyadicInterval(alo + blo, ahi + bhi, e)

    __radd__ = __add__

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo, self.exp)

    def __sub__(self, other):
        if isinstance(other, int):
            other = DyadicInterval.point(other)
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: int) -> "DyadicInterval":
        if factor >= 0:
            return DyadicInterval(self.lo * factor, self.hi * factor, self.exp)
        return DyadicInterval(self.hi * factor, self.lo * factor, self.exp)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return DyadicInterval(min(products), max(products), self.exp + other.exp)

    __rmul__ = __mul__

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return DyadicInterval(0, max(-self.lo, self.hi), self.exp)

    def round_out(self, bits: int) -> "DyadicInterval":
        """Coarsen to the grid ``2**-bits``, rounding lo down and hi up."""
        target = -bits
        if target <= self.exp:
            return self
        drop = target - self.exp
        return DyadicInterval(self.lo >> drop, -((-self.hi) >> drop), target)

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


def _to_fraction(mantissa: int, exp: int) -> Fraction:
    if exp >= 0:
        return Fraction(mantissa << exp)
    return Fraction(mantissa, 1 << -exp)
