"""Exact joint probabilities ``Pr[a in A, b in B]`` under (L-refined) correlated noise."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..core.algebra import projection_size
from ..core.census import DistanceCensus, distance_census
from ..core.codes import CodePair
from ..errors import ValidationError
from .correlated import CorrelationSpec, monte_carlo_probability
from .lemmas import RssBoundInputs, lemma6_upper, lemma7_terms, rsse_lower_bound


def log2_sum(log_terms: list[float]) -> float:
    """``log2(sum(2**t))`` with the scaled terms added by ``math.fsum``."""
    finite = [t for t in log_terms if t != -math.inf]
    if not finite:
        return -math.inf
    top = max(finite)
    return top + math.log2(math.fsum(2.0 ** (t - top) for t in finite))


def census_log_terms(census: DistanceCensus, rho: float) -> list[float]:
    """``log2`` of each ``((1+rho)/2)^(m-d) ((1-rho)/2)^d W_d`` term."""
    m = census.m
    log_p = math.log2((1.0 + rho) / 2.0)
    log_q = math.log2((1.0 - rho) / 2.0) if rho < 1.0 else -math.inf
    out = []
    for d, w in enumerate(census.counts):
        if w == 0 or (d and log_q == -math.inf):
            out.append(-math.inf)
        else:
            out.append((m - d) * log_p + (d * log_q if d else 0.0) + math.log2(w))
    return out


def joint_log2_from_census(census: DistanceCensus, rho: float) -> float:
    """``log2 Pr`` from an (optionally restricted) census; ``|R| = n - m``."""
    if not 0.0 <= rho <= 1.0:
        raise ValidationError(f"rho must lie in [0, 1], got {rho}")
    r_size = census.n - census.m
    value = -census.n - r_size + log2_sum(census_log_terms(census, rho))
    # A probability; rounding in the sum can otherwise leave it a hair above 0.
    return min(value, 0.0)


@dataclass
class ProbabilityReport:
    n: int
    rho: float
    l_set: tuple[int, ...] | None
    exact_log2: float
    terms: dict = field(default_factory=dict)
    mc_estimate: float | None = None
    mc_samples: int | None = None
    mc_radius: float | None = None
    lower_bound_log2: float | None = None
    upper_bound_log2: float | None = None

    @property
    def probability(self) -> float:
        return 2.0**self.exact_log2

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rho": self.rho,
            "l_set": None if self.l_set is None else [c + 1 for c in self.l_set],
            "exact_log2": self.exact_log2,
            "exact": self.probability,
            "terms": dict(self.terms),
            "mc_estimate": self.mc_estimate,
            "mc_samples": self.mc_samples,
            "mc_radius": self.mc_radius,
            "lower_bound_log2": self.lower_bound_log2,
            "upper_bound_log2": self.upper_bound_log2,
        }


def exact_joint_probability(
    pair: CodePair, spec: CorrelationSpec, census: DistanceCensus | None = None
) -> ProbabilityReport:
    """Exact probability that a correlated pair lands in ``A x B``, via the L-restricted census.

    Any two codes are accepted; unique decodability is not required.
    """
    if spec.n != pair.n:
        raise ValidationError("spec and pair disagree on n")
    if census is None:
        census = distance_census(pair, spec.l_set)
    elif census.restriction != spec.l_set and not (
        census.restriction is None and spec.l_size == spec.n
    ):
        raise ValidationError("census restriction does not match the spec")
    value = joint_log2_from_census(census, spec.rho)
    return ProbabilityReport(
        n=pair.n,
        rho=spec.rho,
        l_set=spec.l_set,
        exact_log2=value,
        terms={
            "l_size": spec.l_size,
            "r_size": spec.r_size,
            "census": list(census.counts),
            "log2_per_n": value / pair.n if pair.n else 0.0,
        },
    )


def direct_joint_probability(pair: CodePair, spec: CorrelationSpec) -> float:
    """Brute-force probability: sum over all ``(a, b)`` of per-coordinate factors.

    Shares no code with the census route; used as its oracle.
    """
    n = pair.n
    shifts = np.arange(n, dtype=np.uint64)
    abits = ((pair.a.array[:, None] >> shifts) & np.uint64(1)).astype(bool)
    bbits = ((pair.b.array[:, None] >> shifts) & np.uint64(1)).astype(bool)
    in_l = np.zeros(n, dtype=bool)
    in_l[list(spec.l_coords)] = True
    agree_p = np.where(in_l, (1.0 + spec.rho) / 2.0, 0.5)
    disagree_p = np.where(in_l, (1.0 - spec.rho) / 2.0, 0.5)
    parts = []
    for row in abits:
        eq = bbits == row[None, :]
        parts.extend(np.prod(np.where(eq, agree_p, disagree_p), axis=1).tolist())
    return math.fsum(parts) * 0.5**n


def probability_report(
    pair: CodePair,
    spec: CorrelationSpec,
    epsilon: float | None = None,
    mc_samples: int = 0,
    seed: int | None = None,
    workers: int = 1,
) -> ProbabilityReport:
    """Exact probability plus whatever bounds and estimates apply.

    With ``L = [n]`` the isoperimetric bound on ``(A, B)`` is attached. With
    ``epsilon`` given, the refined upper and lower bounds (scaled back to log2)
    are attached; they assume ``A`` is epsilon-dense on ``L`` and the pair is a
    UDCP, which is the caller's responsibility.
    """
    report = exact_joint_probability(pair, spec)
    n = pair.n
    if mc_samples:
        mc = monte_carlo_probability(pair, spec, mc_samples, seed, workers)
        report.mc_estimate = mc.estimate
        report.mc_samples = mc.samples
        report.mc_radius = mc.radius(4.0, p=report.probability)
        report.terms["mc_seed"] = mc.seed
    if spec.rho < 1.0 and spec.l_size == n:
        rsse = rsse_lower_bound(RssBoundInputs.from_sets(pair.a, pair.b, spec.rho))
        report.terms["rsse_lower_log2"] = rsse
        report.lower_bound_log2 = rsse
    if epsilon is not None and spec.rho < 1.0 and n:
        lam = spec.l_size / n
        pi = math.log2(projection_size(pair.b, spec.l_coords)) / n
        low = lemma7_terms(lam, pi, epsilon, spec.rho, n)
        up = lemma6_upper(lam, epsilon, spec.rho, n)
        report.terms.update(
            {
                "lambda": lam,
                "pi": pi,
                "epsilon": epsilon,
                "lemma6_upper_per_n": up,
                **{f"lemma7_{k}": v for k, v in low.items()},
            }
        )
        report.lower_bound_log2 = max(
            low["total"] * n,
            report.lower_bound_log2 if report.lower_bound_log2 is not None else -math.inf,
        )
        report.upper_bound_log2 = up * n
    return report
