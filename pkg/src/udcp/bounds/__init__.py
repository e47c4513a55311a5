"""Entropy helpers, rate-bound pipelines and the interval certificate."""

from .entropy import binary_entropy, entropy_half_bound_check
from .ineq3 import (
    Certificate,
    ineq3_constants,
    ineq3_rhs,
    rhs_enclosure,
    small_epsilon_envelope,
    verify_ineq3,
)
from .interval import Interval
from .pipelines import (
    BOUND_METHODS,
    BoundReport,
    RateParams,
    best_bound,
    classic_bound,
    classic_report,
    main_bound,
    main_coefficients,
    recompute_beta_bound,
    warmup_bound,
    warmup_constant,
)
from .solve import largest_fixed_point, minimize_on_grid

__all__ = [
    "BOUND_METHODS",
    "BoundReport",
    "Certificate",
    "Interval",
    "RateParams",
    "best_bound",
    "binary_entropy",
    "classic_bound",
    "classic_report",
    "entropy_half_bound_check",
    "ineq3_constants",
    "ineq3_rhs",
    "largest_fixed_point",
    "main_bound",
    "main_coefficients",
    "minimize_on_grid",
    "recompute_beta_bound",
    "rhs_enclosure",
    "small_epsilon_envelope",
    "verify_ineq3",
    "warmup_bound",
    "warmup_constant",
]
