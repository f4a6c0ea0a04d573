import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hcrevenue.algos import (
    AlgorithmConfig,
    average_linkage,
    bisect_then_random,
    extract_half_revenue_bisection,
    random_tree,
    run_algorithm,
    uniform_binary_tree,
    window_bisections,
)
from hcrevenue.hctree import HcTree, revenue
from hcrevenue.instance import SimilarityGraph, gen_matching, gen_random
from hcrevenue.mub import bisection_revenue, mub_exact
from hcrevenue.oracle import double_factorial_odd
from hcrevenue.ordering import conditional_expectation_ordering, leaf_ordering

from conftest import graph_and_tree, graphs


@lru_cache(maxsize=None)
def expected_lca_size(m):
    """E|T_e| for two fixed leaves in a cluster of m under balanced random splitting.

    Hypergeometric: after splitting m into ceil/floor halves, both leaves land
    in the part of size s with probability C(s, 2) / C(m, 2).
    """
    if m == 2:
        return Fraction(2)
    big, small = (m + 1) // 2, m // 2
    p_big = Fraction(comb(big, 2), comb(m, 2))
    p_small = Fraction(comb(small, 2), comb(m, 2)) if small >= 2 else Fraction(0)
    out = (1 - p_big - p_small) * m + p_big * expected_lca_size(big)
    if small >= 2:
        out += p_small * expected_lca_size(small)
    return out


def _mean_sd(values):
    n = len(values)
    mean = sum(values) / n
    sd = math.sqrt(sum((v - mean) ** 2 for v in values) / (n - 1))
    return mean, sd / math.sqrt(n)


def test_expected_lca_size_closed_form():
    # the hypergeometric recursion lands on (2m + 2)/3, so each edge earns (m - 2)/3 inside its cluster
    for m in range(2, 40):
        assert expected_lca_size(m) == Fraction(2 * m + 2, 3)


def test_random_tree_small():
    assert random_tree(1, 0) == HcTree(1)
    assert random_tree(2, 0) == HcTree((1, 2))
    assert random_tree(9, 4) == random_tree(9, 4)
    with pytest.raises(ValueError):
        random_tree(0, 0)


@given(st.integers(1, 40), st.integers(0, 2**40))
def test_random_tree_is_balanced(n, seed):
    t = random_tree(n, seed)
    assert sorted(t.leaves()) == list(range(1, n + 1))
    for v in t.internal_nodes:
        a, b = t.children(v)
        assert t.size(a) - t.size(b) in (0, 1)


def test_random_tree_sibling_probability():
    trials = 10_000
    hits = sum(random_tree(4, s).lca_size(1, 2) == 2 for s in range(trials))
    p = 1 / 3
    assert abs(hits - trials * p) <= 3 * math.sqrt(trials * p * (1 - p))


def test_random_tree_matching4_revenue():
    g = gen_matching(4)
    per_edge = [float(revenue(g, random_tree(4, s))) / 2 for s in range(10_000)]
    mean, se = _mean_sd(per_edge)
    assert abs(mean - 2 / 3) <= 3 * se


@pytest.mark.parametrize("n", [5, 7, 10])
def test_random_tree_matches_exact_expectation(n):
    trials = 4000
    sizes = [random_tree(n, s).lca_size(1, 2) for s in range(trials)]
    mean, se = _mean_sd(sizes)
    assert abs(mean - float(expected_lca_size(n))) <= 3 * se


def test_average_linkage_examples(star3):
    t = average_linkage(gen_matching(4))
    assert t == HcTree(((1, 2), (3, 4)))
    assert revenue(gen_matching(4), t) == 4
    t = average_linkage(star3)
    assert t == HcTree((((1, 2), 3), 4))
    assert revenue(star3, t) == 8
    assert average_linkage(SimilarityGraph(3)) == HcTree(((1, 2), 3))
    assert average_linkage(SimilarityGraph(1)) == HcTree(1)


def test_average_linkage_uses_averages_not_sums():
    # {1,2} vs 3 has sum 4 over 2 pairs (avg 2); the edge (4,5) has avg 3 and wins
    g = SimilarityGraph(5, ((1, 2, 10), (1, 3, 2), (2, 3, 2), (4, 5, 3)))
    t = average_linkage(g)
    assert t.lca_size(4, 5) == 2
    assert t == HcTree((((1, 2), 3), (4, 5)))


def test_bisect_then_random_matching4():
    g = gen_matching(4)
    for seed in range(20):
        t = bisect_then_random(g, "exact", seed)
        assert set(t.leaves(t.children(t.root)[0])) == {1, 2}
        assert revenue(g, t) == 4


def test_bisect_then_random_matching6_mean():
    # exact MUB keeps two pairs inside sides of 3; each earns 3 + (3 - 2)/3 in expectation
    g = gen_matching(6)
    expected = 2 * (Fraction(6) - expected_lca_size(3))
    assert expected == Fraction(20, 3)
    b = mub_exact(g)
    revs = [float(revenue(g, bisect_then_random(g, "exact", s, bisection=b))) for s in range(1000)]
    mean, se = _mean_sd(revs)
    assert abs(mean - float(expected)) <= 3 * se


def test_bisect_then_random_misc():
    assert revenue(SimilarityGraph(6), bisect_then_random(SimilarityGraph(6), "exact", 1)) == 0
    g = gen_random(8, 0.5, 5, 2)
    assert bisect_then_random(g, "local", 3) == bisect_then_random(g, "local", 3)
    with pytest.raises(ValueError):
        bisect_then_random(SimilarityGraph(5), "exact", 0)
    with pytest.raises(ValueError):
        bisect_then_random(g, "sdp", 0)


@given(graphs(min_n=2, max_n=10, even=True), st.integers(0, 2**40))
@settings(deadline=None)
def test_bisect_then_random_root_is_the_bisection(g, seed):
    b = mub_exact(g)
    t = bisect_then_random(g, "exact", seed)
    first = set(t.leaves(t.children(t.root)[0]))
    assert first in (set(b.left), set(b.right))


def test_window_bisections():
    ws = window_bisections((3, 1, 2, 4))
    assert [w.left for w in ws] == [(1, 3), (1, 2)]


def test_extract_examples(pairs4, comb4, star3):
    g = gen_matching(4)
    b = extract_half_revenue_bisection(g, pairs4)
    assert bisection_revenue(g, b) == 4
    b = extract_half_revenue_bisection(star3, comb4)
    assert bisection_revenue(star3, b) == 6
    assert b.left == (1, 2)
    with pytest.raises(ValueError):
        extract_half_revenue_bisection(SimilarityGraph(3), HcTree(((1, 2), 3)))


@settings(max_examples=150, deadline=None)
@given(graph_and_tree(min_n=2, max_n=12, even=True))
def test_extract_keeps_half(case):
    g, t = case
    b = extract_half_revenue_bisection(g, t)
    assert bisection_revenue(g, b) >= revenue(g, t) / 2
    # and it is the best window of the derandomized ordering
    seq = leaf_ordering(t, conditional_expectation_ordering(g, t)).sequence()
    assert bisection_revenue(g, b) == max(bisection_revenue(g, w) for w in window_bisections(seq))


def test_uniform_binary_tree_is_uniform():
    trials = 15_000
    counts = Counter(uniform_binary_tree(4, s).to_nested() for s in range(trials))
    # shapes differ only by child order; fold left/right mirror images together
    def canon(x):
        if isinstance(x, int):
            return x
        a, b = sorted((canon(x[0]), canon(x[1])), key=repr)
        return (a, b)
    folded = Counter()
    for k, c in counts.items():
        folded[canon(k)] += c
    assert len(folded) == double_factorial_odd(4)
    p = 1 / 15
    for c in folded.values():
        assert abs(c - trials * p) <= 3 * math.sqrt(trials * p * (1 - p))


def test_algorithm_config():
    assert AlgorithmConfig("bisect-random", "exact", 1).p == "1"
    assert "0.8776" in AlgorithmConfig("bisect-random", "local", 1).p
    assert AlgorithmConfig("avglink").p is None
    with pytest.raises(ValueError):
        AlgorithmConfig("rand")
    with pytest.raises(ValueError):
        AlgorithmConfig("rand", seed=1, trials=0)
    with pytest.raises(ValueError):
        AlgorithmConfig("bisect-random", "sdp", 1)
    with pytest.raises(ValueError):
        AlgorithmConfig("kmeans")


def test_run_algorithm_dispatch(star3):
    assert run_algorithm(star3, "avglink") == average_linkage(star3)
    assert revenue(star3, run_algorithm(star3, "opt")) == 8
    assert run_algorithm(star3, "rand", seed=3) == random_tree(4, 3)
