"""Planar leaf orderings of a binary tree.

An orientation holds one bit per internal node (0 keeps left before right,
1 swaps them), indexed by the tree's breadth-first internal-node order.
Every orientation yields a non-crossing embedding of the leaves on a line.

``conditional_expectation_ordering`` fixes the bits greedily from the root
down so that the weighted distance sum ends at or below
``sum_e w_e |T_e| / 2``, the mean over uniformly random orientations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .hctree import HcTree
from .instance import SimilarityGraph, rng_from_seed


@dataclass(frozen=True)
class Orientation:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("orientation bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def original(cls, t: HcTree) -> "Orientation":
        return cls((0,) * len(t.internal_nodes))

    @classmethod
    def from_string(cls, text: str) -> "Orientation":
        return cls(tuple(int(c) for c in text.strip()))

    def __str__(self):
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class LeafOrdering:
    """``positions[k - 1]`` is the 1-based position of leaf k on the line."""

    positions: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.positions) != list(range(1, len(self.positions) + 1)):
            raise ValueError("positions must be a permutation of 1..n")

    @property
    def n(self) -> int:
        return len(self.positions)

    def position(self, leaf: int) -> int:
        return self.positions[leaf - 1]

    def sequence(self) -> tuple[int, ...]:
        """Leaf labels read left to right."""
        seq = [0] * self.n
        for leaf, pos in enumerate(self.positions, 1):
            seq[pos - 1] = leaf
        return tuple(seq)


def _check_orientation(t: HcTree, o: Orientation) -> None:
    if len(o.bits) != len(t.internal_nodes):
        raise ValueError(f"orientation has {len(o.bits)} bits, tree has {len(t.internal_nodes)} internal nodes")


def leaf_ordering(t: HcTree, o: Orientation) -> LeafOrdering:
    _check_orientation(t, o)
    swapped = dict(zip(t.internal_nodes, o.bits))
    positions = [0] * t.n
    pos = 0
    stack = [t.root]
    while stack:
        v = stack.pop()
        if t.is_leaf(v):
            pos += 1
            positions[t.label(v) - 1] = pos
            continue
        first, second = t.children(v)
        if swapped[v]:
            first, second = second, first
        stack.append(second)
        stack.append(first)
    return LeafOrdering(tuple(positions))


def sample_orientation(t: HcTree, seed: int) -> Orientation:
    """Independent fair coin per internal node."""
    bits = rng_from_seed(seed).integers(0, 2, size=len(t.internal_nodes))
    return Orientation(tuple(int(b) for b in bits))


def all_orientations(t: HcTree):
    for bits in itertools.product((0, 1), repeat=len(t.internal_nodes)):
        yield Orientation(bits)


def ordering_distance(pi: LeafOrdering, e) -> int:
    i, j = e[0], e[1]
    if i == j or not (1 <= i <= pi.n and 1 <= j <= pi.n):
        raise ValueError(f"invalid edge endpoints ({i}, {j}) for n={pi.n}")
    return abs(pi.position(i) - pi.position(j))


def weighted_ordering_cost(g: SimilarityGraph, pi: LeafOrdering) -> Fraction:
    if pi.n != g.n:
        raise ValueError(f"ordering has {pi.n} leaves but graph has {g.n}")
    return sum((w * ordering_distance(pi, (i, j)) for i, j, w in g.edges), Fraction(0))


def half_tree_bound(g: SimilarityGraph, t: HcTree) -> Fraction:
    """sum_e w_e |T_e| / 2, the mean of the weighted cost over orientations."""
    return sum((w * t.lca_size(i, j) for i, j, w in g.edges), Fraction(0)) / 2


def _edge_paths(t: HcTree, edges):
    """Per edge: weight, LCA, and both leaf paths as returned by ``_path``."""
    out = []
    for i, j, w in edges:
        lca = t.lca(i, j)
        out.append((w, lca, _path(t, t.leaf_node(i), lca), _path(t, t.leaf_node(j), lca)))
    return out


def _path(t: HcTree, leaf: int, top: int):
    """Return ``(c, steps)`` where c is the child of ``top`` holding ``leaf``.

    ``steps`` has one ``(node, branch)`` pair per proper ancestor of the leaf
    inside c's subtree (c included), empty when c is the leaf itself.
    """
    steps = []
    v = leaf
    while t.parent(v) != top:
        steps.append((t.parent(v), v))
        v = t.parent(v)
    return v, steps


def _twice_offset(t: HcTree, steps, bits) -> int:
    """2 * E[offset of a leaf inside the block of its LCA child]."""
    total = 0
    for node, child in steps:
        left, right = t.children(node)
        sibling = right if child == left else left
        b = bits[node]
        if b is None:
            total += t.size(sibling)
        elif (child == right) != (b == 1):
            total += 2 * t.size(sibling)
    return total


def _twice_expected_cost(t: HcTree, paths, bits) -> Fraction:
    total = Fraction(0)
    for w, lca, (ci, si), (cj, sj) in paths:
        b = bits[lca]
        if b is None:
            y2 = t.size(lca)
        else:
            first_is_i = (ci == t.children(lca)[0]) != (b == 1)
            oi, oj = _twice_offset(t, si, bits), _twice_offset(t, sj, bits)
            if first_is_i:
                y2 = 2 * t.size(ci) + oj - oi
            else:
                y2 = 2 * t.size(cj) + oi - oj
        total += w * y2
    return total


def expected_ordering_cost(g: SimilarityGraph, t: HcTree, partial) -> Fraction:
    """E[sum_e w_e y_e] when the bits in ``partial`` are fixed and ``None`` bits are fair coins.

    ``partial`` is indexed like an orientation (breadth-first internal nodes).
    """
    if g.n != t.n:
        raise ValueError(f"tree has {t.n} leaves but graph has {g.n} points")
    bits = dict(zip(t.internal_nodes, partial))
    return _twice_expected_cost(t, _edge_paths(t, g.edges), bits) / 2


def conditional_expectation_ordering(g: SimilarityGraph, t: HcTree) -> Orientation:
    """Derandomized orientation with cost at most ``half_tree_bound(g, t)``.

    Nodes are fixed in breadth-first order; each takes the bit with the
    smaller conditional expectation, keeping the original order on ties.
    """
    if g.n != t.n:
        raise ValueError(f"tree has {t.n} leaves but graph has {g.n} points")
    paths = _edge_paths(t, g.edges)
    # only edges whose LCA or leaf path passes through a node react to its bit
    touching = {v: [] for v in t.internal_nodes}
    for item in paths:
        _, lca, (_, si), (_, sj) = item
        nodes = {lca} | {node for node, _ in si} | {node for node, _ in sj}
        for v in nodes:
            touching[v].append(item)

    bits = {v: None for v in t.internal_nodes}
    for v in t.internal_nodes:
        local = touching[v]
        bits[v] = 0
        keep = _twice_expected_cost(t, local, bits)
        bits[v] = 1
        swap = _twice_expected_cost(t, local, bits)
        bits[v] = 1 if swap < keep else 0
    return Orientation(tuple(bits[v] for v in t.internal_nodes))
