"""Exhaustive search for extremal pairs, the unbalanced frontier, and reference families."""

from .constructions import kasami_tower, random_udcp, trivial_pair
from .exhaustive import (
    OBJECTIVES,
    FrontierPoint,
    SearchSpec,
    exhaustive_max_product,
    max_b_given_floor,
    product_cap,
    run_search,
    unbalanced_frontier,
)
from .graph import difference_graph, independence_number, max_independent_set

__all__ = [
    "OBJECTIVES",
    "FrontierPoint",
    "SearchSpec",
    "difference_graph",
    "exhaustive_max_product",
    "independence_number",
    "kasami_tower",
    "max_b_given_floor",
    "max_independent_set",
    "product_cap",
    "random_udcp",
    "run_search",
    "trivial_pair",
    "unbalanced_frontier",
]
