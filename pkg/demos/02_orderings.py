"""
Planar leaf orderings and derandomization
=========================================

Flip a coin at every internal node to get a random non-crossing leaf order.
On average an edge's endpoints land |T_e|/2 apart; the greedy
conditional-expectation orientation does at least that well deterministically.
"""

from fractions import Fraction

import numpy as np

from hcrevenue import (conditional_expectation_ordering, gen_random, leaf_ordering,
                       sample_orientation, uniform_binary_tree, weighted_ordering_cost)
from hcrevenue.ordering import all_orientations, half_tree_bound

g = gen_random(8, 0.6, 10, seed=3)
t = uniform_binary_tree(8, seed=4)
print("tree:", t.newick())

bound = half_tree_bound(g, t)
costs = [weighted_ordering_cost(g, leaf_ordering(t, o)) for o in all_orientations(t)]
print("orientations:", len(costs))
print("mean cost over orientations:", sum(costs, Fraction(0)) / len(costs), "= bound", bound)

samples = np.array([float(weighted_ordering_cost(g, leaf_ordering(t, sample_orientation(t, s))))
                    for s in range(200)])
print(f"200 sampled orientations: mean {samples.mean():.2f}, min {samples.min():.0f}, max {samples.max():.0f}")

o = conditional_expectation_ordering(g, t)
pi = leaf_ordering(t, o)
print("derandomized bits", o, "order", pi.sequence(), "cost", weighted_ordering_cost(g, pi), "<=", bound)
