"""Correlated and L-refined noise on the hypercube, with the matching bounds."""

from .correlated import (
    CorrelationSpec,
    MonteCarloEstimate,
    default_seed,
    fat_layer_halfwidth,
    monte_carlo_probability,
    sample_correlated,
    sample_pairs,
    stream_rng,
    window_sizes,
)
from .lemmas import (
    FatLayerReport,
    RssBoundInputs,
    cube_fat_layer_fraction,
    fat_layer_fraction,
    lemma6_upper,
    lemma7_lower,
    lemma7_terms,
    observation3_check,
    rsse_lower_bound,
)
from .probability import (
    ProbabilityReport,
    direct_joint_probability,
    exact_joint_probability,
    joint_log2_from_census,
    probability_report,
)
from .split import SplitReport, find_split

__all__ = [
    "CorrelationSpec",
    "FatLayerReport",
    "MonteCarloEstimate",
    "ProbabilityReport",
    "RssBoundInputs",
    "SplitReport",
    "cube_fat_layer_fraction",
    "default_seed",
    "direct_joint_probability",
    "exact_joint_probability",
    "fat_layer_fraction",
    "fat_layer_halfwidth",
    "find_split",
    "joint_log2_from_census",
    "lemma6_upper",
    "lemma7_lower",
    "lemma7_terms",
    "monte_carlo_probability",
    "observation3_check",
    "probability_report",
    "rsse_lower_bound",
    "sample_correlated",
    "sample_pairs",
    "stream_rng",
    "window_sizes",
]
