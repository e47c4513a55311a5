"""Branch-and-bound search for extremal code pairs at small word length.

The search walks over ``B`` and, for each ``B``, takes ``A`` to be a maximum
independent set of the difference graph. Three symmetries are used to cut
the tree, each applied in turn so that later ones keep the earlier
normalisations:

* swapping the roles of the two codes, so ``|B| <= |A|`` (max-product only);
* flipping a coordinate in both codes at once, so ``0`` is in ``B``;
* permuting coordinates, so the lightest nonzero word of ``B`` is
  ``1...10...0`` (its weight's smallest word).

Words of ``B`` are added in ``(weight, value)`` order.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..core.algebra import is_udcp
from ..core.census import van_tilborg_cap
from ..core.codes import BinaryCode, CodePair, coords_of
from ..errors import ValidationError
from .graph import add_difference_edges, max_independent_set

OBJECTIVES = ("max-product", "max-b-given-a-floor")
MAX_N = 8


@dataclass(frozen=True)
class SearchSpec:
    n: int
    objective: str = "max-product"
    a_floor: int | None = None
    symmetry_reduction: bool = True
    node_budget: int | None = None
    threads: int = 1

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValidationError(f"n must lie in [1, {MAX_N}], got {self.n}")
        if self.objective not in OBJECTIVES:
            raise ValidationError(f"objective must be one of {OBJECTIVES}")
        if self.a_floor is not None and not 1 <= self.a_floor <= 1 << self.n:
            raise ValidationError(f"a_floor must lie in [1, 2^n], got {self.a_floor}")
        if self.objective == "max-b-given-a-floor" and self.a_floor is None:
            raise ValidationError("max-b-given-a-floor needs a_floor")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValidationError("node_budget must be positive")
        if self.threads < 1:
            raise ValidationError("threads must be positive")


@dataclass
class FrontierPoint:
    n: int
    a_size: int
    b_size: int
    witness: CodePair
    optimal: bool
    a_floor: int | None = None
    log: dict = field(default_factory=dict)

    @property
    def alpha(self) -> float:
        return math.log2(self.a_size) / self.n

    @property
    def beta(self) -> float:
        return math.log2(self.b_size) / self.n

    @property
    def product(self) -> int:
        return self.a_size * self.b_size

    @property
    def epsilon(self) -> float:
        """``1 - log2(a_floor)/n`` when a floor was set, else ``1 - alpha``."""
        base = self.a_floor if self.a_floor is not None else self.a_size
        return 1.0 - math.log2(base) / self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a_floor": self.a_floor,
            "a_size": self.a_size,
            "b_size": self.b_size,
            "product": self.product,
            "alpha": self.alpha,
            "beta": self.beta,
            "epsilon": self.epsilon,
            "optimal": self.optimal,
            "a": self.witness.a.to_strings(),
            "b": self.witness.b.to_strings(),
            "log": dict(self.log),
        }


def product_cap(n: int) -> int:
    """Largest ``|A||B|`` allowed by the counting bounds alone."""
    caps = [3**n, math.isqrt(1 << (3 * n)), sum(van_tilborg_cap(n, d) for d in range(n + 1))]
    return min(caps)


def _key(w: int) -> tuple[int, int]:
    return (w.bit_count(), w)


def _bits(mask: int) -> list[int]:
    return list(coords_of(mask))


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0
        self.exhausted = False
        self._lock = threading.Lock()

    def take(self) -> bool:
        with self._lock:
            if self.limit is not None and self.used >= self.limit:
                self.exhausted = True
                return False
            self.used += 1
            return True


class _Shared:
    """Best value across root branches; only ever increases."""

    def __init__(self, value: int):
        self.value = value
        self._lock = threading.Lock()

    def raise_to(self, v: int) -> None:
        with self._lock:
            if v > self.value:
                self.value = v


@dataclass
class _Branch:
    value: int = 0
    b: list[int] | None = None
    a_mask: int | None = None
    pruned: int = 0


def _roots(n: int, symmetric: bool) -> list[int]:
    if symmetric:
        return [(1 << w) - 1 for w in range(1, n + 1)]
    return sorted(range(1, 1 << n), key=_key)


def _run_branches(tasks, threads: int):
    if threads == 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda t: t(), tasks))


# -- max product -------------------------------------------------------------


def _product_branch(n, root, candidates, base_adj, shared, budget, cap, floor_value):
    out = _Branch(value=floor_value)

    def visit(bs: list[int], adj: list[int], alpha: int, a_mask: int, start: int) -> None:
        size = len(bs)
        value = size * alpha
        if value > out.value:
            out.value, out.b, out.a_mask = value, list(bs), a_mask
            shared.raise_to(value)
        for i in range(start, len(candidates)):
            if not budget.take():
                return
            rem = len(candidates) - i
            # Within this subtree |A| <= alpha and |B| <= min(|A|, size + rem).
            ub = min(alpha * min(alpha, size + rem), cap)
            if ub <= out.value or ub < shared.value:
                out.pruned += 1
                return
            c = candidates[i]
            nadj = add_difference_edges(adj, n, c, bs)
            # A child is only useful if alpha^2 can still beat the best value.
            need = max(size + 1, math.isqrt(out.value) + 1)
            a2, m2 = max_independent_set(nadj, lower=need - 1)
            if m2 is None:
                out.pruned += 1
                continue
            visit(bs + [c], nadj, a2, m2, i + 1)

    if budget.take():
        adj = add_difference_edges(base_adj, n, root, [0])
        need = max(2, math.isqrt(out.value) + 1)
        alpha, mask = max_independent_set(adj, lower=need - 1)
        if mask is not None:
            visit([0, root], adj, alpha, mask, 0)
        else:
            out.pruned += 1
    return out


def exhaustive_max_product(spec: SearchSpec) -> FrontierPoint:
    """Largest ``|A||B|`` over all uniquely decodable pairs of length ``spec.n``.

    ``optimal`` is false when the node budget ran out; the witness is then
    the best pair seen.
    """
    if spec.objective != "max-product":
        raise ValidationError("exhaustive_max_product needs objective max-product")
    n = spec.n
    size = 1 << n
    cap = product_cap(n)
    budget = _Budget(spec.node_budget)
    # B = {0} with A the whole cube is always available.
    shared = _Shared(size)
    base_adj = [0] * size
    roots = _roots(n, spec.symmetry_reduction)

    def task(root):
        cands = [w for w in range(1, size) if _key(w) > _key(root)]
        cands.sort(key=_key)
        return lambda: _product_branch(n, root, cands, base_adj, shared, budget, cap, size)

    results = _run_branches([task(r) for r in roots], spec.threads)
    best_val, best_b, best_a = size, [0], (1 << size) - 1
    for res in results:  # fixed comparator: larger value, then earlier root
        if res.b is not None and res.value > best_val:
            best_val, best_b, best_a = res.value, res.b, res.a_mask
    a_code = BinaryCode(n, _bits(best_a))
    b_code = BinaryCode(n, best_b)
    pair = CodePair(a_code, b_code)
    if not is_udcp(pair):
        raise AssertionError("search produced a pair that is not uniquely decodable")
    log = {
        "nodes": budget.used,
        "pruned": sum(r.pruned for r in results),
        "counting_cap": cap,
        "roots": len(roots),
        "symmetry_reduction": spec.symmetry_reduction,
        "budget_exhausted": budget.exhausted,
        # Everything above the optimum is excluded once the search completes.
        "refuted_above": None if budget.exhausted else best_val,
    }
    return FrontierPoint(n, len(a_code), len(b_code), pair, not budget.exhausted, log=log)


# -- unbalanced frontier -----------------------------------------------------


def _floor_branch(n, root, candidates, base_adj, floor, shared, budget, size_cap):
    out = _Branch(value=0)

    def visit(bs, adj, a_mask, start):
        if len(bs) > out.value:
            out.value, out.b, out.a_mask = len(bs), list(bs), a_mask
            shared.raise_to(len(bs))
        for i in range(start, len(candidates)):
            if not budget.take():
                return
            ub = min(len(bs) + len(candidates) - i, size_cap)
            if ub <= out.value or ub < shared.value:
                out.pruned += 1
                return
            c = candidates[i]
            nadj = add_difference_edges(adj, n, c, bs)
            _, m2 = max_independent_set(nadj, lower=floor - 1, target=floor)
            if m2 is None:
                out.pruned += 1
                continue
            visit(bs + [c], nadj, m2, i + 1)

    if budget.take():
        adj = add_difference_edges(base_adj, n, root, [0])
        _, mask = max_independent_set(adj, lower=floor - 1, target=floor)
        if mask is not None:
            visit([0, root], adj, mask, 0)
    return out


def max_b_given_floor(spec: SearchSpec) -> FrontierPoint:
    """Largest ``|B|`` such that some ``A`` with ``|A| >= a_floor`` decodes with it."""
    if spec.a_floor is None:
        raise ValidationError("a_floor is required")
    n, floor = spec.n, spec.a_floor
    size = 1 << n
    size_cap = min(3**n // floor, math.isqrt(1 << (3 * n)) // floor)
    budget = _Budget(spec.node_budget)
    shared = _Shared(1)
    base_adj = [0] * size
    roots = _roots(n, spec.symmetry_reduction)

    def task(root):
        cands = sorted((w for w in range(1, size) if _key(w) > _key(root)), key=_key)
        return lambda: _floor_branch(n, root, cands, base_adj, floor, shared, budget, size_cap)

    results = _run_branches([task(r) for r in roots], spec.threads) if size_cap > 1 else []
    best_b, best_a = [0], None
    for res in results:
        if res.b is not None and len(res.b) > len(best_b):
            best_b, best_a = res.b, res.a_mask
    if best_a is None:
        best_a = (1 << floor) - 1  # B = {0}: any floor-many words will do
    # Report the largest A that works with the chosen B, not just floor words.
    adj = [0] * size
    for j, w in enumerate(best_b):
        adj = add_difference_edges(adj, n, w, best_b[:j])
    _, full_mask = max_independent_set(adj)
    a_code = BinaryCode(n, _bits(full_mask if full_mask is not None else best_a))
    pair = CodePair(a_code, BinaryCode(n, best_b))
    if not is_udcp(pair) or len(a_code) < floor:
        raise AssertionError("frontier witness failed verification")
    log = {
        "nodes": budget.used,
        "pruned": sum(r.pruned for r in results),
        "size_cap": size_cap,
        "budget_exhausted": budget.exhausted,
    }
    return FrontierPoint(
        n, len(a_code), len(pair.b), pair, not budget.exhausted, a_floor=floor, log=log
    )


def unbalanced_frontier(spec: SearchSpec) -> list[FrontierPoint]:
    """Max ``|B|`` for every floor from ``2^n`` down to ``spec.a_floor`` (default 1).

    Sorted by ``epsilon = 1 - log2(floor)/n``, i.e. from the full cube down.
    """
    lowest = spec.a_floor or 1
    points = []
    for floor in range(1 << spec.n, lowest - 1, -1):
        sub = SearchSpec(
            spec.n,
            "max-b-given-a-floor",
            floor,
            spec.symmetry_reduction,
            spec.node_budget,
            spec.threads,
        )
        points.append(max_b_given_floor(sub))
    return sorted(points, key=lambda p: p.epsilon)


def run_search(spec: SearchSpec) -> list[FrontierPoint]:
    if spec.objective == "max-product":
        return [exhaustive_max_product(spec)]
    return unbalanced_frontier(spec)
