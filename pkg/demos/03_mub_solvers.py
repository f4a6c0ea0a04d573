"""
Max-Uncut Bisection solvers
===========================

Split the points into equal halves so that as much weight as possible stays
inside a half. Every uncut edge then earns n/2 as a two-level tree.
"""

from hcrevenue import bisection_revenue, gen_random, mub_exact, mub_local_search, mub_random

for seed in range(4):
    g = gen_random(12, 0.4, 10, seed=seed)
    exact = mub_exact(g)
    local = mub_local_search(g, seed=seed)
    rnd = mub_random(g, seed=seed)
    print(f"instance {seed}: uncut weight exact {exact.uncut_weight(g)}, "
          f"local {local.uncut_weight(g)}, random {rnd.uncut_weight(g)}")
    print("   exact split", exact.left, "|", exact.right, "revenue", bisection_revenue(g, exact))
