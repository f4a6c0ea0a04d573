"""
Bisect first, then split at random
==================================

Compare random splitting, average linkage and the MUB-first algorithm
against the exact optimum on a handful of n=10 instances.
"""

import numpy as np

from hcrevenue import (average_linkage, bisect_then_random, gen_random, mub_exact,
                       opt_tree_dp, random_tree, revenue)
from hcrevenue.oracle import trial_seeds

trials = 300
for k in range(5):
    g = gen_random(10, 0.5, 10, seed=100 + k)
    opt = opt_tree_dp(g).optimum
    b = mub_exact(g)
    seeds = trial_seeds(k, trials)
    alg = np.mean([float(revenue(g, bisect_then_random(g, "exact", s, bisection=b)) / opt) for s in seeds])
    rnd = np.mean([float(revenue(g, random_tree(10, s)) / opt) for s in seeds])
    avg = float(revenue(g, average_linkage(g)) / opt)
    print(f"instance {k}: OPT {opt}  bisect-random {alg:.3f}  random {rnd:.3f}  avglink {avg:.3f}")
