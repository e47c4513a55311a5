"""Certificate that the closing inequality of the main bound is negative on (0, 0.01].

The checked function is

    R(eps) = k_eps * eps
             + (k_sqrt - 1 + k_cross * sqrt(k_gap + sqrt(ln2 eps / 2) - sqrt(eps) + s * eps)) * sqrt(eps)

with ``s = -1`` by default. Its constants are the coefficients of the
linearised projection bound at ``rho = 0.654``, each rounded up at the
precision it is quoted with (see ``ineq3_constants``). ``s = +1`` gives the
variant obtained by substituting the assumed lower bound on ``pi`` directly
into the radicand; that variant turns positive near ``eps = 0.00655``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Decimal
from fractions import Fraction
from typing import IO

import numpy as np

from ..errors import UDCPError, ValidationError
from .interval import Interval
from .pipelines import main_coefficients

MAIN_RHO = 0.654
EPS_MAX = Fraction(1, 100)
DEFAULT_MIN_EPSILON = 1e-8


def _ceil_decimal(x: float, places: int) -> Decimal:
    # Decimal(x) is the exact binary value, so the ceiling is exact too.
    return Decimal(x).quantize(Decimal(1).scaleb(-places), rounding=ROUND_CEILING)


def ineq3_constants(rho: float = MAIN_RHO) -> dict[str, Decimal]:
    """Constants of ``R`` derived from the projection-bound coefficients at ``rho``.

    ``k_gap = 1/2 - c_half`` where ``c_half`` is the constant at ``lam = 1/2``
    rounded up to 4 places; ``k_eps = 1 + c_eps`` with ``c_eps`` rounded up to 3
    places; ``k_sqrt`` is the square-root coefficient after absorbing
    ``lam <= 1/2 + sqrt(ln2 eps/2)``, rounded up to 4 places; ``k_cross = 2 rho``.
    """
    c = main_coefficients(rho)
    c_half = _ceil_decimal(c["constant"] + 0.5 * c["lambda_coefficient"], 4)
    c_eps = _ceil_decimal(c["epsilon_coefficient"], 3)
    radius = math.sqrt(math.log(2) / 2)
    c_sqrt = _ceil_decimal(c["sqrt_epsilon_coefficient"] + c["lambda_coefficient"] * radius, 4)
    return {
        "k_eps": c_eps + 1,
        "k_sqrt": c_sqrt,
        "k_cross": Decimal(repr(rho)) * 2,
        "k_gap": Decimal("0.5") - c_half,
        "c_half": c_half,
    }


def _as_float(d: Decimal) -> float:
    return float(d)


def ineq3_rhs(eps: float | np.ndarray, sign: int = -1, constants: dict | None = None):
    """Floating-point ``R(eps)``; accepts scalars or arrays."""
    k = constants or ineq3_constants()
    e = np.asarray(eps, dtype=float)
    rad = (
        _as_float(k["k_gap"])
        + np.sqrt(math.log(2) * e / 2)
        - np.sqrt(e)
        + sign * e
    )
    if np.any(rad < 0):
        bad = float(np.atleast_1d(e)[np.atleast_1d(rad < 0)][0])
        raise UDCPError(f"radicand negative at eps={bad}")
    val = _as_float(k["k_eps"]) * e + (
        _as_float(k["k_sqrt"]) - 1 + _as_float(k["k_cross"]) * np.sqrt(rad)
    ) * np.sqrt(e)
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class _IntervalConstants:
    k_eps: Interval
    k_sqrt_minus_one: Interval
    k_cross: Interval
    k_gap: Interval
    half_ln2: Interval

    @classmethod
    def from_decimals(cls, k: dict) -> "_IntervalConstants":
        return cls(
            Interval.exact(Fraction(k["k_eps"])),
            Interval.exact(Fraction(k["k_sqrt"]) - 1),
            Interval.exact(Fraction(k["k_cross"])),
            Interval.exact(Fraction(k["k_gap"])),
            Interval.ln2() * Interval.exact(Fraction(1, 2)),
        )


class RadicandError(UDCPError):
    def __init__(self, lo: float, hi: float):
        super().__init__(f"radicand negative on [{lo!r}, {hi!r}]")
        self.lo, self.hi = lo, hi


def _radicand(e: Interval, k: _IntervalConstants, sign: int) -> Interval:
    t = e.sqrt()
    w = (k.half_ln2 * e).sqrt()
    return k.k_gap + w - t + (e if sign > 0 else -e)


def rhs_enclosure(lo: float, hi: float, sign: int = -1, constants: dict | None = None) -> Interval:
    """Interval enclosure of ``R`` over ``[lo, hi]``."""
    k = _IntervalConstants.from_decimals(constants or ineq3_constants())
    return _enclose(Interval(lo, hi), k, sign)


def _enclose(e: Interval, k: _IntervalConstants, sign: int) -> Interval:
    rad = _radicand(e, k, sign)
    if rad.hi < 0:
        raise RadicandError(e.lo, e.hi)
    if rad.lo < 0:
        raise _Split()
    return k.k_eps * e + (k.k_sqrt_minus_one + k.k_cross * rad.sqrt()) * e.sqrt()


class _Split(Exception):
    pass


@dataclass
class Certificate:
    mode: str
    min_epsilon: float
    max_epsilon: float
    sign: int
    constants: dict
    envelope: dict | None
    pieces: list[tuple[float, float, float]] = field(default_factory=list)

    @property
    def max_upper_bound(self) -> float:
        return max(p[2] for p in self.pieces)

    @property
    def all_negative(self) -> bool:
        return all(p[2] < 0 for p in self.pieces)

    @property
    def covers_domain(self) -> bool:
        """Pieces tile ``[min_epsilon, max_epsilon]`` without gaps (interval mode)."""
        if not self.pieces:
            return False
        ok = self.pieces[0][0] <= self.min_epsilon and self.pieces[-1][1] >= self.max_epsilon
        return ok and all(a[1] >= b[0] for a, b in zip(self.pieces, self.pieces[1:]))

    def header(self) -> dict:
        return {
            "certificate": "ineq3",
            "mode": self.mode,
            "domain": [self.min_epsilon, self.max_epsilon],
            "radicand_sign": self.sign,
            "constants": {k: str(v) for k, v in self.constants.items()},
            "envelope": self.envelope,
            "pieces": len(self.pieces),
            "max_upper_bound": self.max_upper_bound,
            "all_negative": self.all_negative,
        }

    def write_jsonl(self, fh: IO[str]) -> None:
        from ..jsonio import dumps

        fh.write(dumps(self.header()) + "\n")
        for lo, hi, ub in self.pieces:
            fh.write(dumps({"lo": lo, "hi": hi, "upper_bound": ub}) + "\n")

    def revalidate(self) -> bool:
        """Recompute every piece's enclosure and confirm it is still negative."""
        if self.mode != "interval":
            raise ValidationError("only interval certificates can be revalidated")
        k = _IntervalConstants.from_decimals(self.constants)
        for lo, hi, ub in self.pieces:
            enc = _enclose(Interval(lo, hi), k, self.sign)
            if enc.hi >= 0 or enc.hi > ub:
                return False
        return self.covers_domain


def small_epsilon_envelope(radius: float, constants: dict | None = None) -> dict:
    """Analytic bound for ``0 < eps <= radius`` (only for the default sign).

    Since ``sqrt(ln2/2) < 1`` and ``eps > 0``, the radicand is at most ``k_gap``,
    so ``R(eps) <= sqrt(eps) * (K + k_eps sqrt(eps))`` with
    ``K = k_sqrt - 1 + k_cross sqrt(k_gap)``. ``R < 0`` whenever
    ``sqrt(eps) < -K / k_eps``. All constants are interval enclosures.
    """
    k = _IntervalConstants.from_decimals(constants or ineq3_constants())
    coeff = k.half_ln2.sqrt()
    if coeff.hi >= 1:
        raise UDCPError("envelope needs sqrt(ln2/2) < 1")
    big_k = k.k_sqrt_minus_one + k.k_cross * k.k_gap.sqrt()
    if big_k.hi >= 0:
        raise UDCPError("leading coefficient is not negative")
    # -K / k_eps, rounded down, then squared rounding down.
    t_max = (Interval(-big_k.hi, -big_k.hi) * Interval(1.0 / k.k_eps.hi, 1.0 / k.k_eps.hi)).lo
    t_max = math.nextafter(t_max * (1 - 1e-12), 0.0)
    eps_max = math.nextafter(t_max * t_max, 0.0)
    r = Interval(0.0, radius)
    rad_low = k.k_gap - coeff.__rsub__(1.0) * r.sqrt() - r
    return {
        "radius": radius,
        "leading_coefficient_upper": big_k.hi,
        "valid_up_to": eps_max,
        "radicand_lower": rad_low.lo,
        "holds": radius <= eps_max and rad_low.lo > 0,
    }


def verify_ineq3(
    grid_step: float = 1e-5,
    mode: str = "interval",
    min_epsilon: float = DEFAULT_MIN_EPSILON,
    max_epsilon: float = float(EPS_MAX),
    sign: int = -1,
    max_pieces: int = 1_000_000,
    min_width: float = 1e-12,
) -> Certificate:
    """Check ``R(eps) < 0`` on ``[min_epsilon, max_epsilon]``.

    ``float`` mode samples a grid of step ``grid_step``. ``interval`` mode
    bisects until each piece's outward-rounded enclosure is negative. Pieces
    whose enclosure straddles zero are split; a piece that is provably
    non-negative, or narrower than ``min_width`` relative to its right end,
    is kept with its non-negative bound so ``all_negative`` comes out false.
    """
    if grid_step <= 0:
        raise ValidationError("grid_step must be positive")
    if not 0 < min_epsilon < max_epsilon:
        raise ValidationError("need 0 < min_epsilon < max_epsilon")
    if sign not in (-1, 1):
        raise ValidationError("sign must be -1 or +1")
    consts = ineq3_constants()
    envelope = small_epsilon_envelope(min_epsilon, consts) if sign == -1 else None
    cert = Certificate(mode, min_epsilon, max_epsilon, sign, consts, envelope)

    if mode == "float":
        count = int(math.floor((max_epsilon - min_epsilon) / grid_step)) + 1
        grid = min_epsilon + grid_step * np.arange(count)
        grid = np.unique(np.append(grid[grid <= max_epsilon], max_epsilon))
        values = ineq3_rhs(grid, sign, consts)
        cert.pieces = [(float(e), float(e), float(v)) for e, v in zip(grid, values)]
        return cert
    if mode != "interval":
        raise ValidationError("mode must be 'float' or 'interval'")

    k = _IntervalConstants.from_decimals(consts)
    todo = [(min_epsilon, max_epsilon)]
    done: list[tuple[float, float, float]] = []
    while todo:
        if len(done) + len(todo) > max_pieces:
            raise UDCPError("interval certificate exceeded its piece budget")
        lo, hi = todo.pop()
        try:
            enc = _enclose(Interval(lo, hi), k, sign)
            if enc.hi < 0 or enc.lo >= 0:
                # Settled: negative, or provably non-negative (a counterexample).
                done.append((lo, hi, enc.hi))
                continue
        except _Split:
            enc = None
        mid = math.sqrt(lo * hi) if hi > 2 * lo else 0.5 * (lo + hi)
        if hi - lo <= min_width * hi or not lo < mid < hi:
            done.append((lo, hi, enc.hi if enc is not None else math.inf))
            continue
        todo.append((mid, hi))
        todo.append((lo, mid))
    done.sort()
    cert.pieces = done
    return cert


def certificate_to_json(cert: Certificate) -> dict:
    return {**cert.header(), "pieces_list": [list(p) for p in cert.pieces]}


def write_certificate(cert: Certificate, path: str) -> None:
    with open(path, "w") as fh:
        cert.write_jsonl(fh)


def dumps_piece(p: tuple[float, float, float]) -> str:
    return json.dumps({"lo": p[0], "hi": p[1], "upper_bound": p[2]})
