"""The difference graph of a code and a bitset maximum-independent-set solver.

``(A, B)`` is uniquely decodable exactly when no nonzero difference ``b - b'``
equals a difference ``a - a'``. For fixed ``B`` that makes the admissible
``A`` the independent sets of the graph on ``{0,1}^n`` joining ``a`` and
``a'`` whenever ``a - a'`` is a difference of ``B``.
"""

from __future__ import annotations

from typing import Iterable


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def add_difference_edges(adj: list[int], n: int, b: int, others: Iterable[int]) -> list[int]:
    """Copy of ``adj`` with the edges created by adding ``b`` to a code holding ``others``."""
    out = list(adj)
    full = (1 << n) - 1
    for c in others:
        pos, neg = b & ~c, c & ~b
        free = full & ~(pos | neg)
        for s in _subsets(free):
            u, v = s | pos, s | neg
            out[u] |= 1 << v
            out[v] |= 1 << u
    return out


def difference_graph(n: int, code: Iterable[int]) -> list[int]:
    """Adjacency bitmasks of the difference graph of ``code``."""
    adj = [0] * (1 << n)
    seen: list[int] = []
    for b in code:
        adj = add_difference_edges(adj, n, b, seen)
        seen.append(b)
    return adj


def _color_order(p: int, comp: list[int]) -> tuple[list[int], list[int]]:
    # Greedy colouring of the complement graph restricted to p: each colour
    # class is a clique of the original graph, so an independent set meets
    # each class at most once.
    order: list[int] = []
    colors: list[int] = []
    k = 0
    u = p
    while u:
        k += 1
        q = u
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~low & ~comp[v]
            u &= ~low
            order.append(v)
            colors.append(k)
    return order, colors


class _MIS:
    def __init__(self, adj: list[int], lower: int, target: int | None):
        nv = len(adj)
        full = (1 << nv) - 1
        self.comp = [full & ~adj[v] & ~(1 << v) for v in range(nv)]
        self.best = lower
        self.best_set: int | None = None
        self.target = target
        self.full = full

    def done(self) -> bool:
        return self.target is not None and self.best >= self.target

    def expand(self, chosen: int, size: int, p: int) -> None:
        order, colors = _color_order(p, self.comp)
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= self.best or self.done():
                return
            v = order[i]
            bit = 1 << v
            nxt = p & self.comp[v]
            if nxt:
                self.expand(chosen | bit, size + 1, nxt)
            elif size + 1 > self.best:
                self.best = size + 1
                self.best_set = chosen | bit
            p &= ~bit


def max_independent_set(
    adj: list[int], lower: int = 0, target: int | None = None
) -> tuple[int, int | None]:
    """Largest independent set, as ``(size, vertex bitmask)``.

    Only sets larger than ``lower`` are looked for; when none exists the
    result is ``(lower, None)``. With ``target`` the search stops as soon as a
    set of that size is found.
    """
    solver = _MIS(adj, lower, target)
    if adj:
        solver.expand(0, 0, solver.full)
    return solver.best, solver.best_set


def independence_number(adj: list[int]) -> int:
    return max_independent_set(adj)[0]


def greedy_independent_set(adj: list[int], order: Iterable[int]) -> int:
    """Maximal independent set picked greedily in the given vertex order."""
    chosen = 0
    blocked = 0
    for v in order:
        if not blocked >> v & 1:
            chosen |= 1 << v
            blocked |= adj[v] | (1 << v)
    return chosen
