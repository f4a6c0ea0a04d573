import pytest
from hypothesis import given

from hcrevenue.errors import ParseError
from hcrevenue.hctree import (
    HcTree,
    bisection_tree,
    dasgupta_cost,
    edge_revenues,
    parse_newick,
    revenue,
    subtree_size_at_lca,
)
from hcrevenue.instance import SimilarityGraph, gen_matching, total_weight
from hcrevenue.mub import Bisection, bisection_revenue

from conftest import graph_and_tree, graphs, trees

FIGURE_TREE = HcTree((((1, 2), 3), ((4, 5), 6)))


def _pairing_tree(n):
    """Matched pairs as siblings, pairs combined left-deep."""
    nested = (1, 2)
    for k in range(2, n // 2 + 1):
        nested = (nested, (2 * k - 1, 2 * k))
    return HcTree(nested)


def test_construction_and_structure(pairs4):
    assert pairs4.n == 4
    assert pairs4.internal_nodes == (0, 1, 2)
    assert pairs4.children(0) == (1, 2)
    assert pairs4.size(0) == 4 and pairs4.size(1) == 2
    assert pairs4.leaves() == [1, 2, 3, 4]
    assert HcTree(1).n == 1


@pytest.mark.parametrize("nested", [((1, 2, 3), 4), ((1, 2), (2, 3)), ((1, 3), 4), (0, 1)])
def test_rejects_bad_trees(nested):
    with pytest.raises(ValueError):
        HcTree(nested)


def test_subtree_size_at_lca(pairs4):
    assert subtree_size_at_lca(pairs4, 1, 2) == 2
    assert subtree_size_at_lca(pairs4, 1, 3) == 4
    assert subtree_size_at_lca(FIGURE_TREE, 3, 4) == 6
    with pytest.raises(ValueError):
        subtree_size_at_lca(pairs4, 2, 2)
    with pytest.raises(ValueError):
        subtree_size_at_lca(pairs4, 1, 5)


def test_revenue_examples(pairs4, comb4):
    g = gen_matching(4)
    assert revenue(g, pairs4) == 4
    # e12 earns 4 - 2, e34 sits under the root and earns 0
    assert revenue(g, comb4) == 2
    assert edge_revenues(g, comb4) == [2, 0]


@pytest.mark.parametrize("n", [2, 4, 6, 8, 12, 20])
def test_revenue_of_pairing_tree(n):
    assert revenue(gen_matching(n), _pairing_tree(n)) == (n // 2) * (n - 2)


def test_dasgupta_examples(pairs4, comb4):
    g = gen_matching(4)
    assert dasgupta_cost(g, pairs4) == 4
    assert dasgupta_cost(g, comb4) == 6


def test_leaf_count_mismatch(pairs4):
    with pytest.raises(ValueError):
        revenue(gen_matching(6), pairs4)
    with pytest.raises(ValueError):
        dasgupta_cost(gen_matching(6), pairs4)


@given(graph_and_tree(min_n=2, max_n=10))
def test_complementarity(case):
    g, t = case
    r, c = revenue(g, t), dasgupta_cost(g, t)
    assert r + c == g.n * total_weight(g)
    assert 0 <= r <= (g.n - 2) * total_weight(g)


@given(graph_and_tree(min_n=2, max_n=10))
def test_lca_size_bounds(case):
    g, t = case
    left, right = t.children(t.root)
    left_leaves = set(t.leaves(left))
    for i in range(1, g.n + 1):
        for j in range(i + 1, g.n + 1):
            s = subtree_size_at_lca(t, i, j)
            assert 2 <= s <= g.n
            if (i in left_leaves) != (j in left_leaves):
                assert s == g.n


@given(graph_and_tree(min_n=1, max_n=12))
def test_newick_round_trip(case):
    _, t = case
    assert parse_newick(t.newick()) == t


def test_newick_format(pairs4):
    assert pairs4.newick() == "((1,2),(3,4));"
    assert parse_newick(" ((1, 2),\n(3,4)) ; ") == pairs4


@pytest.mark.parametrize("text", ["((1,2),(3,4))", "((1,2),(3,4);", "((1,2,3),4);", "((1,2),(3,x));"])
def test_newick_errors(text):
    with pytest.raises(ParseError):
        parse_newick(text)


def test_bisection_tree_structure():
    bt = bisection_tree(Bisection.from_left({1, 2}, 4), 4)
    assert bt.to_nested() == ((1, 2), (3, 4))
    assert bt.newick() == "((1,2),(3,4));"
    assert bt.lca_size(1, 2) == 2 and bt.lca_size(1, 3) == 4


def test_bisection_tree_revenue():
    assert revenue(gen_matching(4), bisection_tree(Bisection.from_left({1, 2}, 4), 4)) == 4
    # {1,2,3}|{4,5,6}: e12 and e56 uncut at n/2 = 3 each, e34 cut
    b6 = Bisection.from_left({1, 2, 3}, 6)
    assert revenue(gen_matching(6), bisection_tree(b6, 6)) == 6


def test_bisection_tree_wrong_size():
    with pytest.raises(ValueError):
        bisection_tree(Bisection.from_left({1, 2}, 4), 6)


@given(graphs(min_n=2, max_n=10, even=True))
def test_bisection_tree_matches_bisection_revenue(g):
    half = set(range(1, g.n // 2 + 1))
    b = Bisection.from_left(half, g.n)
    wl, wr, _ = b.weights(g)
    assert revenue(g, bisection_tree(b, g.n)) == bisection_revenue(g, b) == (g.n // 2) * (wl + wr)
