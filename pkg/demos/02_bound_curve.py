"""
Upper bounds on beta near the full-rate corner
==============================================

When one user sends at rate ``1 - eps``, how fast can the other go? Three
bounds compete: the classic ``1/2 + eps``, a warm-up noise bound, and the
projection bound, which is the only one below 1/2 at ``eps = 0``.
"""

import math

import numpy as np

from udcp.bounds import best_bound, classic_bound, main_bound, warmup_bound

print("eps       classic   warm-up   main(raw)  best   winner")
for eps in [0.0, 1e-4, 1e-3, 0.003, 0.005, 0.007, 0.01, 0.02]:
    rep = best_bound(eps)
    main_raw = main_bound(eps).terms["main_raw"]
    print(
        f"{eps:<9g} {classic_bound(eps):.5f}   {warmup_bound(eps).beta_bound:.5f}"
        f"   {main_raw:.5f}    {rep.beta_bound:.5f} {rep.winner}"
    )

# The optimal correlation drifts as eps grows.
for eps in (0.0, 0.005, 0.01):
    rep = main_bound(eps)
    print(f"eps={eps}: rho* = {rep.terms['rho']:.4f}, lambda = {rep.terms['lambda']:.4f}")

# A simple form 0.4228 + sqrt(eps) tracks the best bound, but not everywhere:
# in a thin band just below 0.0071 the optimised bound sits slightly above it.
grid = np.linspace(0.0, 0.01, 2001)
excess = np.array([best_bound(float(e)).beta_bound - (0.4228 + math.sqrt(e)) for e in grid])
above = grid[excess > 0]
print(f"largest excess {excess.max():.2e} at eps={grid[excess.argmax()]:.5f}")
print(f"grid points above the simple form: [{above.min():.5f}, {above.max():.5f}]")
