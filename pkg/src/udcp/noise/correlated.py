"""Correlated copies on the hypercube and Monte-Carlo estimation.

Random streams
--------------
All sampling draws from numpy's Philox4x64-10 counter-based generator. A
stream is identified by ``(seed, stream_index)`` and keyed through
``numpy.random.SeedSequence(seed, spawn_key=(stream_index,))``, so the bits
produced are the same on every platform numpy supports. Monte-Carlo work is
cut into fixed chunks of ``MC_CHUNK`` samples and chunk ``k`` always uses
stream ``k``; the estimate therefore does not depend on how many workers
process the chunks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..core.codes import CodePair, check_coords, mask_of
from ..errors import ValidationError

MC_CHUNK = 1 << 16
SEED_ENV = "UDCP_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def stream_rng(seed: int, stream: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class CorrelationSpec:
    """Noise parameter ``rho`` on the coordinates ``l_set`` (all when ``None``).

    Outside ``l_set`` the copy is uniform. ``rho == 1`` is accepted here so the
    sampler can produce exact copies; every formula dividing by ``1 - rho^2``
    rejects it.
    """

    n: int
    rho: float
    l_set: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("n must be non-negative")
        if not 0.0 <= self.rho <= 1.0:
            raise ValidationError(f"rho must lie in [0, 1], got {self.rho}")
        if self.l_set is not None:
            object.__setattr__(self, "l_set", check_coords(self.l_set, self.n))

    @property
    def l_coords(self) -> tuple[int, ...]:
        return tuple(range(self.n)) if self.l_set is None else self.l_set

    @property
    def l_mask(self) -> int:
        return mask_of(self.l_coords)

    @property
    def l_size(self) -> int:
        return len(self.l_coords)

    @property
    def r_size(self) -> int:
        return self.n - self.l_size

    def flip_probabilities(self) -> np.ndarray:
        t = np.full(self.n, 0.5)
        t[list(self.l_coords)] = (1.0 - self.rho) / 2.0
        return t


def _pack(bits: np.ndarray) -> np.ndarray:
    n = bits.shape[1]
    if n > 64:
        raise ValidationError("packed sampling supports n <= 64")
    weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
    return (bits.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def _uniform_words(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    return _pack(rng.random((size, n)) < 0.5)


def correlated_copies(
    x: np.ndarray, spec: CorrelationSpec, rng: np.random.Generator
) -> np.ndarray:
    """One correlated copy of each packed word in ``x``."""
    flips = rng.random((x.size, spec.n)) < spec.flip_probabilities()
    return x ^ _pack(flips)


def sample_correlated(x: int, spec: CorrelationSpec, seed: int | None = None) -> int:
    """A single correlated copy of the word ``x``; deterministic in ``seed``."""
    if not 0 <= x < 1 << spec.n:
        raise ValidationError(f"word does not fit in {spec.n} bits")
    rng = stream_rng(default_seed() if seed is None else seed)
    flips = rng.random(spec.n) < spec.flip_probabilities()
    return x ^ sum(1 << i for i in np.flatnonzero(flips).tolist())


def sample_pairs(
    spec: CorrelationSpec, size: int, seed: int, stream: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """``size`` draws of ``(a, b)`` with ``b`` uniform and ``a`` a correlated copy."""
    rng = stream_rng(seed, stream)
    b = _uniform_words(rng, spec.n, size)
    return correlated_copies(b, spec, rng), b


def _member(sorted_words: np.ndarray, x: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_words, x)
    idx[idx == sorted_words.size] = 0
    return sorted_words[idx] == x


@dataclass(frozen=True)
class MonteCarloEstimate:
    hits: int
    samples: int
    seed: int

    @property
    def estimate(self) -> float:
        return self.hits / self.samples

    def radius(self, sigmas: float = 4.0, p: float | None = None) -> float:
        """Binomial confidence radius; uses the estimate itself unless ``p`` is given."""
        q = self.estimate if p is None else p
        return sigmas * math.sqrt(q * (1.0 - q) / self.samples)


def monte_carlo_probability(
    pair: CodePair,
    spec: CorrelationSpec,
    samples: int,
    seed: int | None = None,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Estimate ``Pr[a in A, b in B]`` for ``a`` a correlated copy of uniform ``b``."""
    if spec.n != pair.n:
        raise ValidationError("spec and pair disagree on n")
    if samples <= 0:
        raise ValidationError("samples must be positive")
    seed = default_seed() if seed is None else seed
    a_words, b_words = pair.a.array, pair.b.array
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)

    def run(k: int) -> int:
        a, b = sample_pairs(spec, sizes[k], seed, k)
        return int(np.count_nonzero(_member(b_words, b) & _member(a_words, a)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(run, range(len(sizes))))
    else:
        hits = sum(run(k) for k in range(len(sizes)))
    return MonteCarloEstimate(hits, samples, seed)


def window_sizes(n: int, halfwidth: float) -> range:
    """Integers ``k`` with ``(1/2 - w) n <= k <= (1/2 + w) n``, evaluated exactly."""
    w = Fraction(halfwidth)
    lo = math.ceil((Fraction(1, 2) - w) * n)
    hi = math.floor((Fraction(1, 2) + w) * n)
    return range(max(lo, 0), min(hi, n) + 1)


def fat_layer_halfwidth(epsilon: float) -> float:
    """``sqrt(ln 2 * eps / 2)``: the window radius that captures half of a large set."""
    if epsilon < 0:
        raise ValidationError("epsilon must be non-negative")
    return math.sqrt(math.log(2) * epsilon / 2)

