"""Binary entropy and the quadratic bound on it near one half."""

from __future__ import annotations

import math

from ..errors import ValidationError


def binary_entropy(x: float) -> float:
    """``h(x) = -x log2 x - (1-x) log2(1-x)``, with ``h(0) = h(1) = 0``."""
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_half_bound_check(x: float) -> float:
    """Margin ``1 - (2/ln 2) x^2 - h(1/2 + x)``, positive for every ``x`` in (0, 1/2].

    Near zero the margin behaves like ``(4 / (3 ln 2)) x^4``; it is evaluated
    through ``log1p`` so small arguments do not cancel to noise.
    """
    if not 0.0 < x <= 0.5:
        raise ValidationError(f"x must lie in (0, 1/2], got {x}")
    if x == 0.5:
        return 1.0 - 0.5 / math.log(2)
    # h(1/2 + x) = 1 - [(1+2x) ln(1+2x) + (1-2x) ln(1-2x)] / (2 ln 2)
    u = 2.0 * x
    s = (1.0 + u) * math.log1p(u) + (1.0 - u) * math.log1p(-u)
    return (s / 2.0 - u * u / 2.0) / math.log(2)
