"""Dense subcodes: the projection-class pruning that makes a code dense on a split."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from ..errors import LemmaViolation, ValidationError
from .codes import BinaryCode, check_coords, mask_of
from .exact import as_fraction, ceil_pow2


def _classes(code: BinaryCode, mask: int) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = defaultdict(list)
    for w in code:
        groups[w & mask].append(w)
    return groups


@dataclass(frozen=True)
class DensityCheck:
    """Both clauses of epsilon-density, measured against exact integer thresholds."""

    projection_size: int
    projection_threshold: int
    min_class_size: int
    class_threshold: int

    @property
    def projection_ok(self) -> bool:
        return self.projection_size >= self.projection_threshold

    @property
    def classes_ok(self) -> bool:
        return self.min_class_size >= self.class_threshold

    @property
    def ok(self) -> bool:
        return self.projection_ok and self.classes_ok


def density_thresholds(n: int, l_size: int, epsilon) -> tuple[int, int]:
    """Integer thresholds ``ceil(2^(|L|-eps*n-1))`` and ``ceil(2^(n-|L|-eps*n-1))``."""
    eps_n = as_fraction(epsilon) * n
    return ceil_pow2(l_size - eps_n - 1), ceil_pow2(n - l_size - eps_n - 1)


def check_density(code: BinaryCode, l_set: Iterable[int], epsilon) -> DensityCheck:
    """Measure ``code`` against the epsilon-dense definition for the split ``l_set``."""
    coords = check_coords(l_set, code.n)
    groups = _classes(code, mask_of(coords))
    proj_t, class_t = density_thresholds(code.n, len(coords), epsilon)
    return DensityCheck(
        projection_size=len(groups),
        projection_threshold=proj_t,
        min_class_size=min(len(g) for g in groups.values()),
        class_threshold=class_t,
    )


def is_epsilon_dense(code: BinaryCode, l_set: Iterable[int], epsilon) -> bool:
    return check_density(code, l_set, epsilon).ok


@dataclass(frozen=True)
class DenseSubcodeReport:
    parent: BinaryCode
    subset: BinaryCode
    l_set: tuple[int, ...]
    epsilon: float
    class_count: int
    min_class_size: int
    check: DensityCheck

    def to_json(self) -> dict:
        return {
            "n": self.parent.n,
            "l_set": [c + 1 for c in self.l_set],
            "epsilon": self.epsilon,
            "parent_size": len(self.parent),
            "subset_size": len(self.subset),
            "class_count": self.class_count,
            "min_class_size": self.min_class_size,
            "projection_threshold": self.check.projection_threshold,
            "class_threshold": self.check.class_threshold,
            "dense": self.check.ok,
            "subset": self.subset.to_strings(),
        }


def extract_dense_subcode(a: BinaryCode, l_set: Iterable[int], epsilon) -> DenseSubcodeReport:
    """Keep every projection class of size at least ``|A| / 2^(|L|+1)``.

    Requires ``|A| >= 2^((1-eps) n)``; the result is then epsilon-dense with
    respect to ``l_set``, which is re-checked before returning.
    """
    n = a.n
    coords = check_coords(l_set, n)
    eps = as_fraction(epsilon)
    if not 0 <= eps <= 1:
        raise ValidationError(f"epsilon must lie in [0, 1], got {epsilon}")
    need = ceil_pow2((1 - eps) * n)
    if len(a) < need:
        raise ValidationError(
            f"|A|={len(a)} is below the size floor 2^((1-eps)n) -> {need}"
        )
    groups = _classes(a, mask_of(coords))
    scale = 1 << (len(coords) + 1)
    kept = [g for g in groups.values() if len(g) * scale >= len(a)]
    subset = BinaryCode(n, (w for g in kept for w in g))
    check = check_density(subset, coords, eps)
    if not check.ok:
        raise LemmaViolation(f"dense extraction produced a non-dense set: {check}")
    return DenseSubcodeReport(
        parent=a,
        subset=subset,
        l_set=coords,
        epsilon=float(eps),
        class_count=len(kept),
        min_class_size=min(len(g) for g in kept),
        check=check,
    )
