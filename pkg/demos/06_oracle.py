"""
Brute-force ground truth
========================

Enumerate every rooted binary tree, check the count against (2n-3)!!, and
confirm that the subset DP finds the same optimum.
"""

import time

from hcrevenue import enumerate_tree_count, gen_random, opt_tree_bruteforce, opt_tree_dp, revenue
from hcrevenue.oracle import double_factorial_odd

for n in range(3, 10):
    start = time.perf_counter()
    count = enumerate_tree_count(n)
    print(f"n={n}: {count} trees (expected {double_factorial_odd(n)}) in {time.perf_counter() - start:.2f}s")

g = gen_random(8, 0.5, 10, seed=9)
brute = opt_tree_bruteforce(g)
dp = opt_tree_dp(g)
print("enumeration optimum", brute.optimum, "over", brute.search_space, "trees; witness", brute.witness.newick())
print("subset DP optimum  ", dp.optimum, "witness revenue", revenue(g, dp.witness))
