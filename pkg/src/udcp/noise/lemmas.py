"""Closed-form bounds on correlated-pair probabilities, and fat-layer measurements.

All bounds are returned in log2 units. ``rsse_lower_bound`` is the absolute
log2 of the probability; ``lemma6_upper`` and ``lemma7_lower`` are normalised
by ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..core.codes import BinaryCode
from ..errors import ValidationError
from .correlated import fat_layer_halfwidth, window_sizes


def _check_rho(rho: float, allow_one: bool = False) -> None:
    top_ok = rho <= 1.0 if allow_one else rho < 1.0
    if not (0.0 <= rho and top_ok):
        bound = "[0, 1]" if allow_one else "[0, 1)"
        raise ValidationError(f"rho must lie in {bound}, got {rho}")


@dataclass(frozen=True)
class RssBoundInputs:
    """Sizes of two sets on ``u_size`` coordinates as rates ``f`` and ``g``."""

    u_size: int
    f: float
    g: float
    rho: float

    def __post_init__(self):
        for name in ("f", "g"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {v}")
        _check_rho(self.rho)

    @classmethod
    def from_sets(cls, f_set: BinaryCode, g_set: BinaryCode, rho: float) -> "RssBoundInputs":
        u = f_set.n
        if g_set.n != u:
            raise ValidationError("sets live on different cubes")
        return cls(u, f_set.rate, g_set.rate, rho)


def rsse_lower_bound(inputs: RssBoundInputs) -> float:
    """log2 of the reverse small-set-expansion lower bound on ``Pr[x in F, y in G]``."""
    u, r = inputs.u_size, inputs.rho
    df, dg = 1.0 - inputs.f, 1.0 - inputs.g
    return -u * (df + dg + 2.0 * r * math.sqrt(df * dg)) / (1.0 - r * r)


def lemma6_upper(lam: float, epsilon: float, rho: float, n: int) -> float:
    """Upper bound on ``log2(Pr)/n`` under L-refined noise, with the ``+1/n`` term."""
    _check_rho(rho, allow_one=True)
    if not 0.0 <= lam <= 1.0:
        raise ValidationError(f"lambda must lie in [0, 1], got {lam}")
    if epsilon < 0 or n <= 0:
        raise ValidationError("need epsilon >= 0 and n >= 1")
    return (
        fat_layer_halfwidth(epsilon)
        - 0.5
        + lam * (math.log2(3.0 - rho) - 1.5)
        + 1.0 / n
    )


def lemma7_terms(lam: float, pi: float, epsilon: float, rho: float, n: int) -> dict[str, float]:
    """Named pieces of the finite-n lower bound on ``log2(Pr)/n``.

    The two halvings in the density definition appear as ``+1/n`` inside the
    isoperimetric term (``f = 1 - (eps n + 1)/|L|``) and as the separate
    ``class_halving = -1/n``. With ``u = min(lam, eps + 1/n)`` and
    ``v = lam - pi`` the total is

        -(u + v + 2 rho sqrt(u v)) / (1 - rho^2) + lam - 1 - eps - 1/n.
    """
    _check_rho(rho)
    if pi > lam + 1e-15:
        raise ValidationError(f"pi={pi} exceeds lambda={lam}")
    if pi < 0 or epsilon < 0 or n <= 0:
        raise ValidationError("need pi >= 0, epsilon >= 0, n >= 1")
    v = max(lam - pi, 0.0)
    u = min(lam, epsilon + 1.0 / n)
    iso = -(u + v + 2.0 * rho * math.sqrt(u * v)) / (1.0 - rho * rho)
    iso_asymptotic = (pi - lam - epsilon - 2.0 * rho * math.sqrt(epsilon * v)) / (
        1.0 - rho * rho
    )
    terms = {
        "isoperimetric": iso,
        "isoperimetric_asymptotic": iso_asymptotic,
        "density_deficit": iso - iso_asymptotic,
        "conditional": lam - 1.0 - epsilon,
        "class_halving": -1.0 / n,
    }
    terms["total"] = terms["isoperimetric"] + terms["conditional"] + terms["class_halving"]
    return terms


def lemma7_lower(lam: float, pi: float, epsilon: float, rho: float, n: int) -> float:
    """Lower bound on ``log2(Pr)/n`` with every finite-n deficit made explicit."""
    return lemma7_terms(lam, pi, epsilon, rho, n)["total"]


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma <= 0.5:
        raise ValidationError(f"gamma must lie in (0, 1/2], got {gamma}")


def fat_layer_fraction(code: BinaryCode, z: int, gamma: float) -> float:
    """Fraction of ``x`` in ``code`` with ``|x xor z|`` in ``(1/2 +- gamma) n``."""
    _check_gamma(gamma)
    ks = window_sizes(code.n, gamma)
    inside = sum(1 for x in code if (x ^ z).bit_count() in ks)
    return inside / len(code)


def cube_fat_layer_fraction(n: int, gamma: float) -> Fraction:
    """The same fraction for the whole cube, as an exact binomial sum."""
    _check_gamma(gamma)
    return Fraction(sum(math.comb(n, k) for k in window_sizes(n, gamma)), 1 << n)


@dataclass(frozen=True)
class FatLayerReport:
    n: int
    gamma: float
    fraction: float
    size_condition: bool
    gamma_condition: bool

    @property
    def at_least_half(self) -> bool:
        return self.fraction >= 0.5


def observation3_check(code: BinaryCode, z: int, epsilon: float, gamma: float | None = None) -> FatLayerReport:
    """Measure the fat-layer fraction and record whether the hypotheses hold.

    The half-mass claim is asymptotic, so this reports rather than asserts.
    """
    gamma = fat_layer_halfwidth(epsilon) if gamma is None else gamma
    gamma = min(gamma, 0.5)
    n = code.n
    return FatLayerReport(
        n=n,
        gamma=gamma,
        fraction=fat_layer_fraction(code, z, gamma),
        size_condition=math.log2(len(code)) >= (1.0 - epsilon) * n,
        gamma_condition=gamma >= fat_layer_halfwidth(epsilon),
    )
