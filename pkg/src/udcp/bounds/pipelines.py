"""Upper bounds on the rate of B given |A| >= 2^((1-eps) n).

Three bounds are available:

* ``classic_bound``: ``beta <= 1/2 + eps``, from ``alpha + beta <= 3/2``.
* ``warmup_bound``: the correlated-pair argument over all coordinates,
  ``beta <= (log2(3-rho) - 2)(1 - rho^2) + 1 + eps + 2 rho sqrt(eps (1-beta))``.
* ``main_bound``: the split argument, which bounds the projection rate ``pi``
  of ``B`` on a near-half split through
  ``pi <= (w + 1/2 + eps + lam (log2(3-rho) - 5/2))(1-rho^2) + 2 rho sqrt(eps (lam-pi)) + eps + lam``
  with ``w = sqrt(ln2 eps / 2)`` and ``lam = 1/2 + w``, then ``beta <= pi + eps``.

Both self-referential forms are solved for their largest consistent value.
All vanishing ``o(1)`` terms are dropped, so every report is asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import ValidationError
from .solve import largest_fixed_point, minimize_on_grid

MAIN_EPSILON_MAX = 0.01
RHO_GRID_STEP = 1e-3
RHO_MAX = 0.999


@dataclass(frozen=True)
class RateParams:
    epsilon: float
    rho: float | None = None
    lam: float | None = None
    pi: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.rho is not None and not 0.0 <= self.rho < 1.0:
            raise ValidationError(f"rho must lie in [0, 1), got {self.rho}")
        if self.lam is not None and not 0.0 <= self.lam <= 1.0:
            raise ValidationError(f"lambda must lie in [0, 1], got {self.lam}")
        if self.pi is not None and self.lam is not None and self.pi > self.lam:
            raise ValidationError("pi cannot exceed lambda")


@dataclass
class BoundReport:
    method: str
    inputs: RateParams
    terms: dict = field(default_factory=dict)
    beta_bound: float = 1.0
    winner: str | None = None
    certified: bool = False
    asymptotic: bool = True

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "inputs": {
                k: getattr(self.inputs, k) for k in ("epsilon", "rho", "lam", "pi", "beta")
            },
            "terms": dict(self.terms),
            "beta_bound": self.beta_bound,
            "winner": self.winner,
            "certified": self.certified,
            "asymptotic": self.asymptotic,
        }


def fat_layer_radius(epsilon: float) -> float:
    return math.sqrt(math.log(2) * epsilon / 2)


def classic_bound(epsilon: float) -> float:
    """``1/2 + eps``, capped at the trivial ``beta <= 1``."""
    RateParams(epsilon)
    return min(0.5 + epsilon, 1.0)


def classic_report(epsilon: float) -> BoundReport:
    value = classic_bound(epsilon)
    return BoundReport(
        "classic",
        RateParams(epsilon),
        {"half_plus_epsilon": 0.5 + epsilon, "trivial_cap": 1.0},
        value,
        winner="classic",
    )


# -- warm-up ---------------------------------------------------------------


def warmup_constant(rho: float) -> float:
    """``(log2(3-rho) - 2)(1-rho^2) + 1``."""
    return (math.log2(3.0 - rho) - 2.0) * (1.0 - rho * rho) + 1.0


def warmup_rhs(beta: float, epsilon: float, rho: float) -> float:
    return warmup_constant(rho) + epsilon + 2.0 * rho * math.sqrt(epsilon * max(1.0 - beta, 0.0))


def warmup_fixed_point(epsilon: float, rho: float) -> tuple[float, int]:
    return largest_fixed_point(lambda b: warmup_rhs(b, epsilon, rho), -1.0, 1.0)


def warmup_bound(epsilon: float, rho: float | None = None) -> BoundReport:
    """Solve the warm-up inequality for ``beta``; optimise ``rho`` when it is not given.

    ``beta_bound`` is the smaller of the fixed point and the classic bound (both
    are valid); the raw fixed point is kept in ``terms["fixed_point"]``.
    """
    RateParams(epsilon, rho)
    optimised = rho is None
    if optimised:
        rho, _ = minimize_on_grid(
            lambda r: warmup_fixed_point(epsilon, r)[0], 0.0, RHO_MAX, RHO_GRID_STEP
        )
    fixed, iters = warmup_fixed_point(epsilon, rho)
    classic = classic_bound(epsilon)
    terms = {
        "rho": rho,
        "rho_optimised": optimised,
        "log2_3_minus_rho": math.log2(3.0 - rho),
        "one_minus_rho_sq": 1.0 - rho * rho,
        "constant_term": warmup_constant(rho),
        "cross_coefficient": 2.0 * rho,
        "fixed_point": fixed,
        "iterations": iters,
        "classic_bound": classic,
    }
    value = min(fixed, classic)
    return BoundReport(
        "warmup",
        RateParams(epsilon, rho, beta=value),
        terms,
        value,
        winner="warmup" if fixed <= classic else "classic",
    )


# -- main ------------------------------------------------------------------


def main_coefficients(rho: float) -> dict[str, float]:
    """Coefficients of the linearised projection bound at a fixed ``rho``.

    ``pi <= c0 + c_lam lam + c_eps eps + c_sqrt sqrt(eps) + c_cross sqrt(eps (lam - pi))``.
    """
    q = 1.0 - rho * rho
    return {
        "constant": 0.5 * q,
        "lambda_coefficient": (math.log2(3.0 - rho) - 2.5) * q + 1.0,
        "epsilon_coefficient": q + 1.0,
        "sqrt_epsilon_coefficient": fat_layer_radius(1.0) * q,
        "cross_coefficient": 2.0 * rho,
    }


def main_rhs(pi: float, epsilon: float, rho: float, lam: float) -> float:
    w = fat_layer_radius(epsilon)
    bracket = w + 0.5 + epsilon + lam * (math.log2(3.0 - rho) - 2.5)
    return (
        bracket * (1.0 - rho * rho)
        + 2.0 * rho * math.sqrt(epsilon * max(lam - pi, 0.0))
        + epsilon
        + lam
    )


def main_fixed_point(epsilon: float, rho: float, lam: float) -> tuple[float, int]:
    return largest_fixed_point(lambda p: main_rhs(p, epsilon, rho, lam), -1.0, lam)


def main_bound(
    epsilon: float,
    rho: float | None = None,
    lam: float | None = None,
    allow_fallback: bool = True,
) -> BoundReport:
    """Projection-rate bound with ``lam`` at the top of its window.

    Returns ``min(pi* + eps, warm-up, classic)`` with the winner labelled. For
    ``eps > 0.01`` the answer is the classic bound unless ``allow_fallback`` is
    false, in which case a ``ValidationError`` is raised.
    """
    RateParams(epsilon, rho, lam)
    if epsilon > MAIN_EPSILON_MAX and not allow_fallback:
        raise ValidationError(
            f"epsilon={epsilon} is outside [0, {MAIN_EPSILON_MAX}] and fallback is off"
        )
    w = fat_layer_radius(epsilon)
    lam = 0.5 + w if lam is None else lam
    optimised = rho is None
    if optimised:
        rho, _ = minimize_on_grid(
            lambda r: main_fixed_point(epsilon, r, lam)[0], 0.0, RHO_MAX, RHO_GRID_STEP
        )
    pi_star, iters = main_fixed_point(epsilon, rho, lam)
    raw = pi_star + epsilon
    warm = warmup_bound(epsilon)
    classic = classic_bound(epsilon)
    coeffs = main_coefficients(rho)
    terms = {
        "rho": rho,
        "rho_optimised": optimised,
        "lambda": lam,
        "fat_layer_radius": w,
        "bracket": w + 0.5 + epsilon + lam * (math.log2(3.0 - rho) - 2.5),
        "one_minus_rho_sq": 1.0 - rho * rho,
        **{f"eq2_{k}": v for k, v in coeffs.items()},
        "constant_at_half": coeffs["constant"] + 0.5 * coeffs["lambda_coefficient"],
        "pi_fixed_point": pi_star,
        "iterations": iters,
        "main_raw": raw,
        "warmup_bound": warm.beta_bound,
        "warmup_rho": warm.inputs.rho,
        "classic_bound": classic,
        "fallback": epsilon > MAIN_EPSILON_MAX,
    }
    candidates = {"classic": classic, "warmup": warm.beta_bound}
    if epsilon <= MAIN_EPSILON_MAX:
        candidates["main"] = raw
    winner = min(candidates, key=lambda k: (candidates[k], k != "main"))
    value = candidates[winner]
    return BoundReport(
        "main",
        RateParams(epsilon, rho, lam, min(pi_star, lam), value),
        terms,
        value,
        winner=winner,
    )


def best_bound(epsilon: float) -> BoundReport:
    """Smallest of the three bounds, with every ``rho`` optimised."""
    report = main_bound(epsilon)
    report.method = "best"
    return report


def recompute_beta_bound(report: BoundReport) -> float:
    """Re-derive ``beta_bound`` from the report's own terms."""
    t, eps = report.terms, report.inputs.epsilon
    if report.method == "classic":
        return min(t["half_plus_epsilon"], t["trivial_cap"])
    if report.method == "warmup":
        return min(t["fixed_point"], t["classic_bound"])
    options = [t["classic_bound"], t["warmup_bound"]]
    if not t["fallback"]:
        options.append(t["pi_fixed_point"] + eps)
    return min(options)


BOUND_METHODS = {
    "classic": classic_report,
    "warmup": warmup_bound,
    "main": main_bound,
    "best": best_bound,
}
