"""Hierarchical clustering under the revenue objective.

Exact-arithmetic models, algorithms and brute-force oracles for building
HC trees that maximize sum_ij w_ij (n - |T_ij|).
"""

from .algos import (
    AlgorithmConfig,
    average_linkage,
    bisect_then_random,
    extract_half_revenue_bisection,
    random_tree,
    uniform_binary_tree,
)
from .hctree import BisectionTree, HcTree, bisection_tree, dasgupta_cost, parse_newick, revenue, subtree_size_at_lca
from .instance import SimilarityGraph, gen_matching, gen_random, parse_graph, serialize_graph, total_weight
from .mub import Bisection, bisection_revenue, mub_exact, mub_local_search, mub_random
from .oracle import enumerate_tree_count, opt_tree_bruteforce, opt_tree_dp, rand_revenue_estimate
from .ordering import (
    LeafOrdering,
    Orientation,
    conditional_expectation_ordering,
    leaf_ordering,
    ordering_distance,
    sample_orientation,
    weighted_ordering_cost,
)

__version__ = "0.1.0"
