"""Reference families and random generators of uniquely decodable pairs."""

from __future__ import annotations

import numpy as np

from ..core.algebra import is_udcp, product_compose
from ..core.codes import BinaryCode, CodePair, coords_of, kasami_lin
from ..errors import ValidationError
from .graph import difference_graph, greedy_independent_set


def kasami_tower(k: int) -> CodePair:
    """``k``-fold product of the base pair {00,01,11} x {10,01}; length ``2k``."""
    if k < 1:
        raise ValidationError(f"k must be at least 1, got {k}")
    base = kasami_lin()
    is_udcp(base)
    pair = base
    for _ in range(k - 1):
        pair = product_compose(pair, base)
        is_udcp(pair)
    return pair


def trivial_pair() -> CodePair:
    """``({0,1}, {0})`` at length 1, the unit for doubling the product."""
    return CodePair(BinaryCode(1, [0, 1]), BinaryCode(1, [0]))


def random_udcp(
    n: int, rng: np.random.Generator, b_size: int | None = None, swap: bool | None = None
) -> CodePair:
    """A random verified pair: random ``B``, then a greedy random maximal ``A``.

    ``b_size`` defaults to a random size between 1 and ``2^(n/2)``. With
    ``swap`` (random when ``None``) the two roles are exchanged.
    """
    if not 1 <= n <= 12:
        raise ValidationError("random_udcp supports 1 <= n <= 12")
    size = 1 << n
    if b_size is None:
        b_size = int(rng.integers(1, max(2, int(2 ** (n / 2))) + 1))
    b_size = min(b_size, size)
    b_words = [int(w) for w in rng.choice(size, size=b_size, replace=False)]
    adj = difference_graph(n, b_words)
    order = [int(v) for v in rng.permutation(size)]
    a_words = list(coords_of(greedy_independent_set(adj, order)))
    a, b = BinaryCode(n, a_words), BinaryCode(n, b_words)
    if swap is None:
        swap = bool(rng.integers(0, 2))
    pair = CodePair(b, a) if swap else CodePair(a, b)
    if not is_udcp(pair):
        raise AssertionError("random construction is not uniquely decodable")
    return pair
