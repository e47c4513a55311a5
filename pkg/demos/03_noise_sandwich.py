"""
Correlated noise and the probability sandwich
=============================================

The bounds come from one quantity: the chance that ``x`` uniform in ``A``-space
and a noisy copy ``y`` land in ``A`` and ``B``. This demo computes it three
ways and then checks that it sits between the lower and upper estimates.
"""

import math

from udcp.core import CodePair, deficit_epsilon, extract_dense_subcode, projection_size
from udcp.noise import (
    CorrelationSpec,
    direct_joint_probability,
    exact_joint_probability,
    lemma6_upper,
    lemma7_lower,
    monte_carlo_probability,
)
from udcp.search import kasami_tower

pair = kasami_tower(4)
n = pair.n
spec = CorrelationSpec(n, 0.5)

exact = exact_joint_probability(pair, spec).probability
direct = direct_joint_probability(pair, spec)
mc = monte_carlo_probability(pair, spec, 200_000, seed=1)
print(f"census {exact:.6e}  direct {direct:.6e}  sampled {mc.estimate:.6e} +- {mc.radius():.1e}")

# Restrict the correlation to the first half of the coordinates.
l_set = tuple(range(n // 2))
eps = deficit_epsilon(len(pair.a), n)
dense = extract_dense_subcode(pair.a, l_set, eps)
print(f"eps = {eps:.4f}; dense subcode keeps {len(dense.subset)} of {len(pair.a)} words")

sub = CodePair(dense.subset, pair.b)
lam = len(l_set) / n
pi = math.log2(projection_size(pair.b, l_set)) / n
for rho in (0.0, 0.3, 0.654, 0.9):
    value = exact_joint_probability(sub, CorrelationSpec(n, rho, l_set)).exact_log2 / n
    lo = lemma7_lower(lam, pi, eps, rho, n)
    up = lemma6_upper(lam, eps, rho, n)
    print(f"rho={rho:<5} {lo:+.4f} <= {value:+.4f} <= {up:+.4f}")
