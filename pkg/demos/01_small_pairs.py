"""
Small uniquely decodable pairs
==============================

Two users share a binary adder channel. The receiver sees ``a + b`` with
integer addition per coordinate, so it can tell the senders apart exactly
when every sum is distinct. This walks through the smallest interesting
example, its powers, and what exhaustive search finds at short lengths.
"""

from udcp.core import (
    CodePair,
    distance_census,
    find_collision,
    is_udcp,
    kasami_lin,
    van_tilborg_check,
)
from udcp.search import SearchSpec, exhaustive_max_product, kasami_tower, unbalanced_frontier

# The three-by-two pair at length 2.
pair = kasami_lin()
print("A =", pair.a.to_strings(), " B =", pair.b.to_strings())
print("uniquely decodable:", is_udcp(pair))
print(f"alpha + beta = {pair.alpha + pair.beta:.7f}")

# Using one code for both users fails, and the collision says why.
bad = CodePair(pair.a, pair.a)
print("A with itself:", find_collision(bad))

# Concatenating copies keeps the rate pair fixed while n grows.
for k in (1, 2, 3):
    t = kasami_tower(k)
    print(f"k={k}: n={t.n} |A|={len(t.a)} |B|={len(t.b)} sum rate {t.alpha + t.beta:.5f}")

# Pairs at distance d are capped by C(n,d) 2^min(d,n-d).
report = van_tilborg_check(kasami_tower(2))
print("census", list(distance_census(kasami_tower(2)).counts), "min slack", report.min_slack)

# Exhaustive search: the largest |A||B| for n = 1..4.
for n in range(1, 5):
    best = exhaustive_max_product(SearchSpec(n))
    print(
        f"n={n}: max |A||B| = {best.product} ({len(best.witness.a)} x {len(best.witness.b)}),"
        f" {best.log['nodes']} nodes"
    )

# Trading |A| against |B| at n = 3.
for point in unbalanced_frontier(SearchSpec(3, "max-b-given-a-floor", 1)):
    print(f"|A| >= {point.a_floor}: max |B| = {point.b_size}  (eps = {point.epsilon:.3f})")
