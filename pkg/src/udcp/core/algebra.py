"""Sumsets, difference sets, UDCP verification, projections and products."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import NotVerifiedError, ValidationError
from .codes import FAST_WIDTH, BinaryCode, CodePair, TernaryWord, check_coords, mask_of

# Below this many pairs the early-exit hash-set loop beats numpy setup cost.
_SMALL_PRODUCT = 4096
_NUMPY_PRODUCT_LIMIT = 1 << 26


def _pair(pair: CodePair) -> CodePair:
    if pair.a.n != pair.b.n:
        raise ValidationError("word-length mismatch")
    return pair


def sumset(pair: CodePair) -> frozenset[TernaryWord]:
    """All coordinatewise integer sums ``a + b``."""
    _pair(pair)
    n = pair.n
    return frozenset(TernaryWord.of_sum(a, b, n) for a in pair.a for b in pair.b)


def diffset(pair: CodePair) -> frozenset[TernaryWord]:
    """All coordinatewise differences ``a - b``."""
    _pair(pair)
    n = pair.n
    return frozenset(TernaryWord.of_diff(a, b, n) for a in pair.a for b in pair.b)


def find_collision(pair: CodePair) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Return two pairs ``(a, b) != (a', b')`` with equal sums, or ``None``."""
    _pair(pair)
    n = pair.n
    seen: dict[int, tuple[int, int]] = {}
    for a in pair.a:
        for b in pair.b:
            key = (a ^ b) | ((a & b) << n)
            other = seen.setdefault(key, (a, b))
            if other != (a, b):
                return other, (a, b)
    return None


def _distinct_sums_numpy(a: np.ndarray, b: np.ndarray, n: int) -> bool:
    keys = (a[:, None] ^ b[None, :]) | ((a[:, None] & b[None, :]) << np.uint64(n))
    return np.unique(keys.ravel()).size == keys.size


def is_udcp(pair: CodePair) -> bool:
    """True iff all ``|A|*|B|`` sums are distinct. Caches the verdict on ``pair``."""
    _pair(pair)
    if pair.udcp is not None:
        return pair.udcp
    n = pair.n
    product = pair.product
    if product > 3**n:
        verdict = False
    elif (
        _SMALL_PRODUCT < product <= _NUMPY_PRODUCT_LIMIT and 2 * n <= FAST_WIDTH
    ):
        verdict = _distinct_sums_numpy(pair.a.array, pair.b.array, n)
    else:
        verdict = find_collision(pair) is None
    pair._record(verdict)
    return verdict


def require_udcp(pair: CodePair, what: str = "operation") -> CodePair:
    if not is_udcp(pair):
        raise NotVerifiedError(f"{what} needs a uniquely decodable pair")
    return pair


def project(code: BinaryCode, coords: Iterable[int]) -> BinaryCode:
    """Restrict every word to the given 0-based coordinates (kept in sorted order)."""
    cs = check_coords(coords, code.n)
    if code.n <= FAST_WIDTH and len(code) > 64:
        arr = code.array
        out = np.zeros_like(arr)
        for j, c in enumerate(cs):
            out |= ((arr >> np.uint64(c)) & np.uint64(1)) << np.uint64(j)
        return BinaryCode(len(cs), np.unique(out).tolist())
    words = set()
    for w in code:
        v = 0
        for j, c in enumerate(cs):
            v |= (w >> c & 1) << j
        words.add(v)
    return BinaryCode(len(cs), words)


def projection_size(code: BinaryCode, coords: Iterable[int]) -> int:
    """``|X_P|`` without building the projected code."""
    m = mask_of(check_coords(coords, code.n))
    if code.n <= FAST_WIDTH and len(code) > 64:
        return int(np.unique(code.array & np.uint64(m)).size)
    return len({w & m for w in code})


def product_compose(p1: CodePair, p2: CodePair) -> CodePair:
    """Concatenate two verified pairs into a pair of length ``n1 + n2``."""
    require_udcp(p1, "product_compose")
    require_udcp(p2, "product_compose")
    n1 = p1.n

    def cat(x: BinaryCode, y: BinaryCode) -> BinaryCode:
        return BinaryCode(n1 + y.n, (u | (v << n1) for u in x for v in y))

    return CodePair(cat(p1.a, p2.a), cat(p1.b, p2.b))


@dataclass(frozen=True)
class EncodedPair:
    """Image of a pair under the injective encoding used for the census bounds.

    Unsplit: ``sym_diff = a xor b`` and ``residue = b minus a``.
    Split on ``l_mask``: the same quantities are taken as
    ``(a_L xor b_L, a_L minus b_L, a_R xor b_R, a_R minus b_R)``, i.e. the
    residue on both halves is ``a minus b``; the halves are stored as
    full-length masked words.
    """

    n: int
    sym_diff: int
    residue: int
    l_mask: int | None = None

    def __post_init__(self):
        if self.residue & ~self.sym_diff:
            raise ValidationError("residue must lie inside the symmetric difference")

    @property
    def blocks(self) -> tuple[int, ...]:
        if self.l_mask is None:
            return (self.sym_diff, self.residue)
        lm = self.l_mask
        rm = ((1 << self.n) - 1) & ~lm
        return (
            self.sym_diff & lm,
            self.residue & lm,
            self.sym_diff & rm,
            self.residue & rm,
        )

    def difference(self) -> TernaryWord:
        """Recover ``b - a``."""
        plus = self.residue
        minus = self.sym_diff & ~self.residue
        if self.l_mask is not None:
            plus, minus = minus, plus
        return TernaryWord("diff", self.n, plus, minus)


def encode_eta(a: int, b: int, n: int, split: Iterable[int] | None = None) -> EncodedPair:
    """Encode ``(a, b)`` as ``(a xor b, b minus a)``, or the split variant on ``split``."""
    limit = 1 << n
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValidationError(f"words do not fit in {n} bits")
    sym = a ^ b
    if split is None:
        return EncodedPair(n, sym, b & ~a)
    lm = mask_of(check_coords(split, n))
    return EncodedPair(n, sym, a & ~b, lm)
