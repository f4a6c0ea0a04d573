from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hcrevenue import HcTree, SimilarityGraph


@pytest.fixture
def star3():
    """Edges (1,2,3), (1,3,2), (1,4,1) on four points."""
    return SimilarityGraph(4, ((1, 2, 3), (1, 3, 2), (1, 4, 1)))


@pytest.fixture
def comb4():
    return HcTree((((1, 2), 3), 4))


@pytest.fixture
def pairs4():
    return HcTree(((1, 2), (3, 4)))


weights = st.one_of(
    st.integers(0, 20),
    st.fractions(min_value=0, max_value=20, max_denominator=8),
)


decimal_weights = st.builds(
    lambda whole, frac, digits: Fraction(whole) + Fraction(frac % 10**digits, 10**digits),
    st.integers(0, 50), st.integers(0, 10**9), st.integers(0, 9),
)


@st.composite
def graphs(draw, min_n=2, max_n=8, even=False, weight_strategy=weights):
    n = draw(st.integers(min_n, max_n))
    if even and n % 2:
        n += 1 if n < max_n else -1
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return SimilarityGraph(n, tuple((i, j, Fraction(draw(weight_strategy))) for i, j in chosen))


def _nested(draw, leaves):
    if len(leaves) == 1:
        return leaves[0]
    k = draw(st.integers(1, len(leaves) - 1))
    return (_nested(draw, leaves[:k]), _nested(draw, leaves[k:]))


@st.composite
def trees(draw, n):
    leaves = draw(st.permutations(list(range(1, n + 1))))
    return HcTree(_nested(draw, list(leaves)))


@st.composite
def graph_and_tree(draw, min_n=2, max_n=8, even=False):
    g = draw(graphs(min_n, max_n, even))
    return g, draw(trees(g.n))
