"""Scalar solvers for the self-referential bounds and the noise-parameter search."""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy import optimize

from ..errors import UDCPError


def largest_fixed_point(
    rhs: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200
) -> tuple[float, int]:
    """Largest ``x`` in ``[lo, hi]`` with ``x <= rhs(x)``, for non-increasing ``rhs``.

    Bisection keeps ``lo`` consistent and ``hi`` inconsistent, so the upper
    end falls monotonically from ``hi``; the returned value is that upper end,
    an over-estimate of the fixed point by at most ``tol``.
    Returns ``(value, iterations)``.
    """
    if hi <= rhs(hi):
        return hi, 0
    if lo > rhs(lo):
        raise UDCPError(f"no consistent value in [{lo}, {hi}]")
    it = 0
    while hi - lo > tol:
        if it >= max_iter:
            raise UDCPError("fixed-point bisection did not converge")
        mid = 0.5 * (lo + hi)
        if mid <= rhs(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    return hi, it


def minimize_on_grid(
    f: Callable[[float], float], lo: float, hi: float, step: float = 1e-3, tol: float = 1e-10
) -> tuple[float, float]:
    """Minimise ``f`` on ``[lo, hi]``: a grid seed refined by golden-section search.

    Returns ``(argmin, min)``.
    """
    grid = np.arange(lo, hi + step / 2, step)
    grid = grid[grid <= hi]
    values = np.array([f(float(x)) for x in grid])
    k = int(np.argmin(values))
    best_x, best_v = float(grid[k]), float(values[k])
    if 0 < k < len(grid) - 1 and values[k] < values[k - 1] and values[k] < values[k + 1]:
        x = optimize.golden(f, brack=(float(grid[k - 1]), best_x, float(grid[k + 1])), tol=tol)
        v = f(float(x))
        if v <= best_v:
            best_x, best_v = float(x), v
    return best_x, best_v
