import math

import numpy as np
import pytest

import oracles
from udcp.core import BinaryCode, CodePair, is_udcp, product_compose
from udcp.errors import ValidationError
from udcp.search import (
    SearchSpec,
    difference_graph,
    exhaustive_max_product,
    independence_number,
    kasami_tower,
    max_b_given_floor,
    max_independent_set,
    product_cap,
    random_udcp,
    trivial_pair,
    unbalanced_frontier,
)
from udcp.search.graph import greedy_independent_set

KNOWN = {1: 2, 2: 6, 3: 14, 4: 36}


def brute_alpha(adj):
    nv = len(adj)
    best = 0
    for mask in range(1 << nv):
        if all(not (adj[v] & mask) for v in range(nv) if mask >> v & 1):
            best = max(best, bin(mask).count("1"))
    return best


def test_mis_against_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(60):
        nv = int(rng.integers(1, 13))
        adj = [0] * nv
        for u in range(nv):
            for v in range(u + 1, nv):
                if rng.random() < 0.4:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        size, mask = max_independent_set(adj)
        assert size == brute_alpha(adj)
        assert bin(mask).count("1") == size
        assert all(not (adj[v] & mask) for v in range(nv) if mask >> v & 1)
        assert max_independent_set(adj, lower=size) == (size, None)


def test_difference_graph_matches_definition():
    n = 3
    b = [0, 3, 5]
    adj = difference_graph(n, b)
    diffs = {
        tuple((x >> i & 1) - (y >> i & 1) for i in range(n)) for x in b for y in b if x != y
    }
    for u in range(8):
        for v in range(8):
            d = tuple((u >> i & 1) - (v >> i & 1) for i in range(n))
            assert bool(adj[u] >> v & 1) == (u != v and d in diffs)
    a = BinaryCode(n, [i for i in range(8) if max_independent_set(adj)[1] >> i & 1])
    assert is_udcp(CodePair(a, BinaryCode(n, b)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_optimum_matches_plain_enumeration(n):
    point = exhaustive_max_product(SearchSpec(n))
    assert point.optimal
    assert point.product == oracles.brute_max_product(n) == KNOWN[n]
    assert is_udcp(CodePair(point.witness.a, point.witness.b))


def test_n2_excludes_eight_and_nine():
    point = exhaustive_max_product(SearchSpec(2))
    assert point.product == 6 and point.log["refuted_above"] == 6
    assert {len(point.witness.a), len(point.witness.b)} == {2, 3}


def test_n4_optimum_symmetry_and_threads():
    base = exhaustive_max_product(SearchSpec(4))
    assert base.product == 36 and base.optimal
    plain = exhaustive_max_product(SearchSpec(4, symmetry_reduction=False))
    assert plain.product == 36
    threaded = exhaustive_max_product(SearchSpec(4, threads=4))
    assert threaded.product == 36
    assert threaded.witness.a == base.witness.a and threaded.witness.b == base.witness.b


def test_optimum_invariant_under_relabelling():
    # Permute coordinates and flip one coordinate of the witness: still optimal-size UDCP.
    point = exhaustive_max_product(SearchSpec(4))
    perm = [2, 0, 3, 1]

    def relabel(w):
        v = sum(((w >> i) & 1) << perm[i] for i in range(4))
        return v ^ 0b0100

    a = BinaryCode(4, [relabel(w) for w in point.witness.a])
    b = BinaryCode(4, [relabel(w) for w in point.witness.b])
    assert is_udcp(CodePair(a, b))
    assert len(a) * len(b) == point.product


def test_doubling_monotonicity():
    for n in (1, 2, 3):
        best = exhaustive_max_product(SearchSpec(n))
        grown = product_compose(best.witness, trivial_pair())
        assert is_udcp(grown)
        assert KNOWN[n + 1] >= 2 * KNOWN[n]


def test_counting_cap():
    assert [product_cap(n) for n in (1, 2, 3, 4)] == [2, 6, 14, 42]
    for n, v in KNOWN.items():
        assert v <= product_cap(n)
        assert math.log2(v) / n <= 1.5


def test_budget_marks_heuristic():
    point = exhaustive_max_product(SearchSpec(5, node_budget=50))
    assert not point.optimal and point.log["budget_exhausted"]
    assert is_udcp(CodePair(point.witness.a, point.witness.b))


def test_frontier_examples():
    assert max_b_given_floor(SearchSpec(2, "max-b-given-a-floor", 4)).b_size == 1
    assert max_b_given_floor(SearchSpec(2, "max-b-given-a-floor", 3)).b_size == 2


@pytest.mark.parametrize("n", [2, 3])
def test_frontier_matches_enumeration(n):
    points = unbalanced_frontier(SearchSpec(n, "max-b-given-a-floor", 1))
    assert [p.a_floor for p in points] == list(range(1 << n, 0, -1))
    assert [p.epsilon for p in points] == sorted(p.epsilon for p in points)
    for p in points:
        assert p.optimal and p.a_size >= p.a_floor
        if n == 2 or p.a_floor >= 6 or p.a_floor <= 2:
            assert p.b_size == oracles.brute_max_b(n, p.a_floor)


def test_spec_validation():
    with pytest.raises(ValidationError):
        SearchSpec(0)
    with pytest.raises(ValidationError):
        SearchSpec(2, "max-b-given-a-floor")
    with pytest.raises(ValidationError):
        SearchSpec(2, a_floor=5)
    with pytest.raises(ValidationError):
        SearchSpec(2, objective="other")


def test_kasami_tower():
    base = kasami_tower(1)
    assert base.a.to_strings() == ["00", "01", "11"]
    two = kasami_tower(2)
    assert (two.n, len(two.a), len(two.b)) == (4, 9, 4) and is_udcp(two)
    for k in (1, 2, 3, 5):
        p = kasami_tower(k)
        assert p.alpha + p.beta == pytest.approx((math.log2(3) + 1) / 2, abs=1e-12)
        assert p.alpha == pytest.approx(math.log2(3) / 2) and p.beta == pytest.approx(0.5)
    with pytest.raises(ValidationError):
        kasami_tower(0)


def test_random_udcp_and_greedy():
    rng = np.random.default_rng(12)
    for _ in range(100):
        pair = random_udcp(int(rng.integers(1, 9)), rng)
        assert is_udcp(CodePair(pair.a, pair.b))
    adj = difference_graph(3, [0, 7])
    chosen = greedy_independent_set(adj, range(8))
    assert bin(chosen).count("1") <= independence_number(adj)
