from fractions import Fraction

import pytest
from hypothesis import given

from hcrevenue.errors import ParseError
from hcrevenue.instance import (
    SimilarityGraph,
    format_weight,
    gen_matching,
    gen_random,
    pad_to_even,
    parse_graph,
    read_graph,
    serialize_graph,
    total_weight,
    write_graph,
)

from conftest import decimal_weights, graphs


def test_parse_basic():
    g = parse_graph("4 2\n1 2 1\n3 4 1")
    assert g.n == 4
    assert g.edges == ((1, 2, 1), (3, 4, 1))


def test_parse_no_edges():
    g = parse_graph("2 0")
    assert g.n == 2 and g.edges == ()


def test_parse_comments_reversed_endpoints_and_decimals():
    g = parse_graph("# header comment\n3 2\n# edge comment\n2 1 0.25\n3 1 1.5\n")
    assert g.edges == ((1, 2, Fraction(1, 4)), (1, 3, Fraction(3, 2)))


@pytest.mark.parametrize("text, lineno, fragment", [
    ("4 1\n1 2 -1", 2, "negative weight"),
    ("4 1\n1 5 1", 2, "out of range"),
    ("4 2\n1 2 1\n2 1 3", 3, "duplicate"),
    ("4 1\n1 2", 2, "'i j w'"),
    ("4 1\n1 1 2", 2, "self-loop"),
    ("4 1\n1 2 abc", 2, "not a nonnegative decimal"),
    ("four 1\n1 2 1", 1, "header"),
    ("4 2\n1 2 1", 2, "declares 2 edges"),
])
def test_parse_errors_carry_line_numbers(text, lineno, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)


def test_zero_weight_edges_are_dropped():
    assert parse_graph("3 2\n1 2 0\n2 3 1").edges == ((2, 3, 1),)


def test_constructor_validation():
    with pytest.raises(ValueError):
        SimilarityGraph(3, ((1, 4, 1),))
    with pytest.raises(ValueError):
        SimilarityGraph(3, ((1, 2, 1), (2, 1, 1)))
    with pytest.raises(ValueError):
        SimilarityGraph(3, ((1, 2, -1),))
    with pytest.raises(ValueError):
        SimilarityGraph(0)


def test_gen_matching():
    assert gen_matching(4).edges == ((1, 2, 1), (3, 4, 1))
    assert gen_matching(2).edges == ((1, 2, 1),)
    with pytest.raises(ValueError):
        gen_matching(5)


@pytest.mark.parametrize("n", [2, 4, 10, 32])
def test_matching_size_and_weight(n):
    g = gen_matching(n)
    assert g.m == n // 2
    assert total_weight(g) == n // 2


def test_gen_random_extremes_and_determinism():
    assert gen_random(6, 0, 5, 11).edges == ()
    full = gen_random(6, 1, 1, 11)
    assert full.m == 15 and all(w == 1 for _, _, w in full.edges)
    assert gen_random(9, 0.4, 7, 123) == gen_random(9, 0.4, 7, 123)
    assert gen_random(9, 0.4, 7, 123) != gen_random(9, 0.4, 7, 124)
    with pytest.raises(ValueError):
        gen_random(5, 1.5, 3, 0)


def test_gen_random_is_pinned():
    # frozen output guards against generator drift across platforms and numpy versions
    g = gen_random(6, 0.5, 10, 7)
    assert serialize_graph(g) == FROZEN_GNP_6


FROZEN_GNP_6 = "6 8\n1 5 10\n1 6 9\n2 4 8\n3 4 10\n3 5 5\n3 6 3\n4 5 9\n4 6 2\n"


def test_total_weight():
    assert total_weight(gen_matching(4)) == 2
    assert total_weight(SimilarityGraph(3)) == 0
    assert total_weight(SimilarityGraph(4, ((1, 2, 3), (1, 3, 2), (1, 4, 1)))) == 6


@given(graphs(min_n=1, max_n=9, weight_strategy=decimal_weights))
def test_round_trip(g):
    assert parse_graph(serialize_graph(g)) == g


def test_serialization_sorted_by_pair():
    g = SimilarityGraph(4, ((3, 4, 1), (2, 1, 2), (1, 4, "0.5")))
    assert serialize_graph(g) == "4 3\n1 2 2\n1 4 0.5\n3 4 1\n"


def test_format_weight():
    assert format_weight(Fraction(3)) == "3"
    assert format_weight(Fraction(1, 8)) == "0.125"
    assert format_weight(Fraction(123456789, 10**9)) == "0.123456789"
    with pytest.raises(ValueError):
        format_weight(Fraction(1, 3))


def test_file_round_trip(tmp_path):
    g = gen_random(7, 0.6, 4, 3)
    write_graph(g, tmp_path / "g.txt")
    assert read_graph(tmp_path / "g.txt") == g


def test_pad_to_even():
    g = SimilarityGraph(3, ((1, 2, 1),))
    assert pad_to_even(g) == SimilarityGraph(4, ((1, 2, 1),))
    assert pad_to_even(gen_matching(4)) == gen_matching(4)
