"""Hamming-distance censuses of code pairs and the van Tilborg cap."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

import numpy as np

from ..errors import LemmaViolation, ValidationError
from .algebra import require_udcp
from .codes import FAST_WIDTH, BinaryCode, CodePair, check_coords, mask_of

# The Walsh-Hadamard path holds 2^n int64 values and sums up to 8^n.
_WHT_MAX_N = 20
_CHUNK = 1 << 22


@dataclass(frozen=True)
class DistanceCensus:
    """Counts ``W_0..W_m`` of pairs by (optionally restricted) Hamming distance.

    ``restriction`` holds 0-based coordinates; ``None`` means all of them.
    """

    n: int
    restriction: tuple[int, ...] | None
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def m(self) -> int:
        return len(self.counts) - 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "restriction": None
            if self.restriction is None
            else [c + 1 for c in self.restriction],
            "counts": list(self.counts),
            "total": self.total,
        }


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform of a length ``2^n`` vector."""
    f = np.array(values, copy=True)
    size = f.size
    h = 1
    while h < size:
        f = f.reshape(-1, 2, h)
        f = np.stack((f[:, 0, :] + f[:, 1, :], f[:, 0, :] - f[:, 1, :]), axis=1)
        h *= 2
    return f.reshape(size)


def xor_correlation(a: BinaryCode, b: BinaryCode) -> np.ndarray:
    """``c[z] = #{(x, y) in a x b : x xor y = z}`` for every ``z``."""
    n = a.n
    if n > _WHT_MAX_N:
        raise ValidationError(f"xor correlation needs n <= {_WHT_MAX_N}")
    fa = np.zeros(1 << n, dtype=np.int64)
    fb = np.zeros(1 << n, dtype=np.int64)
    fa[np.asarray(a.words, dtype=np.int64)] = 1
    fb[np.asarray(b.words, dtype=np.int64)] = 1
    spectrum = walsh_hadamard(fa) * walsh_hadamard(fb)
    return walsh_hadamard(spectrum) >> n


def _census_direct(a: BinaryCode, b: BinaryCode, mask: int, m: int) -> np.ndarray:
    counts = np.zeros(m + 1, dtype=np.int64)
    barr = b.array
    um = np.uint64(mask)
    rows = max(1, _CHUNK // len(b))
    aarr = a.array
    for start in range(0, len(a), rows):
        block = (aarr[start : start + rows, None] ^ barr[None, :]) & um
        counts += np.bincount(np.bitwise_count(block).ravel(), minlength=m + 1)[: m + 1]
    return counts


def _census_wht(a: BinaryCode, b: BinaryCode, mask: int, m: int) -> np.ndarray:
    corr = xor_correlation(a, b)
    z = np.arange(1 << a.n, dtype=np.uint64)
    dist = np.bitwise_count(z & np.uint64(mask)).astype(np.int64)
    counts = np.zeros(m + 1, dtype=np.int64)
    np.add.at(counts, dist, corr)
    return counts


def distance_census(
    pair: CodePair, restriction: Iterable[int] | None = None, method: str = "auto"
) -> DistanceCensus:
    """Count pairs ``(a, b)`` by ``|a xor b|``, or by ``|a_L xor b_L|`` when restricted.

    ``method`` is ``"direct"`` (pairwise), ``"wht"`` (xor-correlation through
    the Walsh-Hadamard transform), ``"python"`` or ``"auto"``.
    """
    a, b, n = pair.a, pair.b, pair.n
    if a.n != b.n:
        raise ValidationError("word-length mismatch")
    coords = None if restriction is None else check_coords(restriction, n)
    mask = (1 << n) - 1 if coords is None else mask_of(coords)
    m = n if coords is None else len(coords)

    if method == "auto":
        if n > FAST_WIDTH:
            method = "python"
        elif n <= _WHT_MAX_N and len(a) * len(b) > 4 * n * (1 << n):
            method = "wht"
        else:
            method = "direct"
    if method == "python":
        raw = [0] * (m + 1)
        for x in a:
            for y in b:
                raw[((x ^ y) & mask).bit_count()] += 1
        counts = tuple(raw)
    elif method == "direct":
        counts = tuple(int(c) for c in _census_direct(a, b, mask, m))
    elif method == "wht":
        counts = tuple(int(c) for c in _census_wht(a, b, mask, m))
    else:
        raise ValidationError(f"unknown census method {method!r}")
    return DistanceCensus(n, coords, counts)


def van_tilborg_cap(n: int, d: int) -> int:
    """``C(n, d) * 2^min(d, n - d)``: most pairs at distance ``d`` a UDCP can have."""
    return comb(n, d) << min(d, n - d)


@dataclass(frozen=True)
class CapRow:
    d: int
    count: int
    cap: int

    @property
    def slack(self) -> int:
        return self.cap - self.count


@dataclass(frozen=True)
class VanTilborgReport:
    n: int
    rows: tuple[CapRow, ...]

    @property
    def min_slack(self) -> int:
        return min(r.slack for r in self.rows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                {"d": r.d, "count": r.count, "cap": r.cap, "slack": r.slack}
                for r in self.rows
            ],
            "min_slack": self.min_slack,
        }


def van_tilborg_check(pair: CodePair) -> VanTilborgReport:
    """Compare each ``W_d`` against its cap; raises ``LemmaViolation`` on any excess."""
    require_udcp(pair, "van_tilborg_check")
    census = distance_census(pair)
    rows = tuple(
        CapRow(d, w, van_tilborg_cap(pair.n, d)) for d, w in enumerate(census.counts)
    )
    bad = [r for r in rows if r.slack < 0]
    if bad:
        raise LemmaViolation(
            f"census exceeds the van Tilborg cap at d={[r.d for r in bad]}: {pair!r}"
        )
    return VanTilborgReport(pair.n, rows)
