"""Exact comparisons against powers of two with rational exponents."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath

_EXACT_BIT_BUDGET = 1 << 20


def as_fraction(x) -> Fraction:
    """Exact rational value of an int, float, Fraction or decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (Rational, int)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x}")
        return Fraction(x)
    return Fraction(float(x))


def ceil_pow2(exponent) -> int:
    """Smallest integer ``c`` with ``c >= 2**exponent`` (and ``c >= 1``)."""
    e = as_fraction(exponent)
    if e <= 0:
        return 1
    if e.denominator == 1:
        return 1 << e.numerator
    # 2^(p/q) with q > 1 in lowest terms is irrational, so there is no tie.
    whole = e.numerator // e.denominator
    with mpmath.workprec(whole + 96):
        c = int(mpmath.ceil(mpmath.power(2, mpmath.mpf(e.numerator) / e.denominator)))
    if c.bit_length() * e.denominator <= _EXACT_BIT_BUDGET:
        while (c - 1) ** e.denominator >= 1 << e.numerator:
            c -= 1
        while c**e.denominator < 1 << e.numerator:
            c += 1
    return c


def at_least_pow2(count: int, exponent) -> bool:
    """``count >= 2**exponent``, decided exactly for integer ``count``."""
    return count >= ceil_pow2(exponent)


def deficit_epsilon(size: int, n: int) -> float:
    """Smallest float ``eps`` with ``size >= 2**((1 - eps) n)``, i.e. ``1 - log2(size)/n`` rounded up."""
    if size < 1 or n < 1:
        raise ValueError("need size >= 1 and n >= 1")
    eps = max(0.0, 1.0 - math.log2(size) / n)
    while not at_least_pow2(size, (1 - Fraction(eps)) * n):
        eps = math.nextafter(eps, math.inf)
    return eps
