"""Outward-rounded float intervals: just enough arithmetic for the inequality certificate.

Every operation computes its endpoints in round-to-nearest and then steps
each one a single ulp outward with ``math.nextafter``. IEEE 754 makes
``+ - * sqrt`` correctly rounded, so the true result lies within half an ulp
of the computed one and the widened interval encloses it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value) -> "Interval":
        """Tightest float interval around an exact rational (or decimal string)."""
        q = Fraction(value)
        f = float(q)
        if Fraction(f) == q:
            return cls(f, f)
        return cls(f, _up(f)) if Fraction(f) < q else cls(_down(f), f)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def ln2(cls) -> "Interval":
        v = math.log(2.0)
        # libm log is faithful, not necessarily correctly rounded: widen by two ulps.
        return cls(_down(_down(v)), _up(_up(v)))

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.exact(other)

    def __add__(self, other) -> "Interval":
        o = self._coerce(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Interval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = self._coerce(other)
        ps = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi]
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError(f"sqrt of an interval reaching below zero: {self}")
        lo = math.sqrt(self.lo)
        return Interval(max(0.0, _down(lo)) if lo else 0.0, _up(math.sqrt(self.hi)))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi
