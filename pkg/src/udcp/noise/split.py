"""Finding a coordinate split ``L`` near ``n/2`` on which ``B`` keeps many projections."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..core.algebra import projection_size, require_udcp
from ..core.codes import CodePair
from ..errors import EmptyWindowError, ValidationError
from .correlated import default_seed, fat_layer_halfwidth, stream_rng, window_sizes

MODES = ("exhaustive", "greedy", "sampled")
EXHAUSTIVE_MAX_N = 20


@dataclass(frozen=True)
class SplitReport:
    n: int
    mode: str
    l_set: tuple[int, ...]
    b_projection_size: int
    epsilon: float
    window: tuple[float, float]
    guarantee_met: bool
    candidates_examined: int

    @property
    def lam(self) -> float:
        return len(self.l_set) / self.n

    @property
    def pi(self) -> float:
        return math.log2(self.b_projection_size) / self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "l_set": [c + 1 for c in self.l_set],
            "lambda": self.lam,
            "pi": self.pi,
            "b_projection_size": self.b_projection_size,
            "epsilon": self.epsilon,
            "window": list(self.window),
            "guarantee_met": self.guarantee_met,
            "candidates_examined": self.candidates_examined,
        }


def _guarantee(pair: CodePair, b_l: int, epsilon: float | None) -> bool:
    """``|B_L| >= 2^((beta - eps) n - 1)``.

    When ``epsilon`` is the pair's own ``1 - alpha`` this reads
    ``|B_L| * 2^(n+1) >= |A| * |B|`` and is decided in integers.
    """
    n = pair.n
    if epsilon is None:
        return b_l << (n + 1) >= len(pair.a) * len(pair.b)
    return math.log2(b_l) >= math.log2(len(pair.b)) - epsilon * n - 1 - 1e-12


def find_split(
    pair: CodePair,
    mode: str = "exhaustive",
    epsilon: float | None = None,
    samples: int = 256,
    seed: int | None = None,
) -> SplitReport:
    """Choose ``L`` with ``|L|/n`` in ``1/2 +- sqrt(ln2 eps / 2)`` maximising ``|B_L|``.

    ``epsilon`` defaults to ``1 - alpha`` of the pair. Ties prefer smaller
    ``|L|`` and then the lexicographically first coordinate set.
    """
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}")
    require_udcp(pair, "find_split")
    n = pair.n
    eps = pair.epsilon if epsilon is None else float(epsilon)
    if eps < 0:
        raise ValidationError("epsilon must be non-negative")
    w = fat_layer_halfwidth(eps)
    sizes = window_sizes(n, w)
    window = (0.5 - w, 0.5 + w)
    if len(sizes) == 0:
        raise EmptyWindowError(
            f"no |L| in [{window[0] * n:.4f}, {window[1] * n:.4f}] at n={n}"
        )
    b = pair.b

    best: tuple[int, int, tuple[int, ...]] | None = None
    examined = 0

    def consider(coords: tuple[int, ...]) -> None:
        nonlocal best, examined
        examined += 1
        key = (-projection_size(b, coords), len(coords), coords)
        if best is None or key < best:
            best = key

    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise ValidationError(f"exhaustive split search needs n <= {EXHAUSTIVE_MAX_N}")
        for k in sizes:
            for coords in itertools.combinations(range(n), k):
                consider(coords)
    elif mode == "greedy":
        chosen: list[int] = []
        current = 1
        while len(chosen) < sizes[-1]:
            gains = [
                (projection_size(b, sorted(chosen + [i])), -i)
                for i in range(n)
                if i not in chosen
            ]
            size, neg_i = max(gains)
            if len(chosen) >= sizes[0] and size <= current:
                break
            chosen.append(-neg_i)
            current = size
            if len(chosen) >= sizes[0]:
                consider(tuple(sorted(chosen)))
        if best is None:
            consider(tuple(sorted(chosen)))
    else:
        rng = stream_rng(default_seed() if seed is None else seed)
        for _ in range(samples):
            k = int(rng.choice(list(sizes)))
            consider(tuple(sorted(rng.choice(n, size=k, replace=False).tolist())))

    neg_size, _, coords = best
    b_l = -neg_size
    return SplitReport(
        n=n,
        mode=mode,
        l_set=coords,
        b_projection_size=b_l,
        epsilon=eps,
        window=window,
        guarantee_met=_guarantee(pair, b_l, epsilon),
        candidates_examined=examined,
    )
