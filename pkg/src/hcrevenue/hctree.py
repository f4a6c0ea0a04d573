"""Binary hierarchical-clustering trees and the two tree objectives.

Trees are built from nested pairs, e.g. ``HcTree(((1, 2), (3, 4)))``. Nodes
get integer ids in breadth-first order (root 0, left child before right),
and that same order indexes orientation bits in :mod:`hcrevenue.ordering`.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .errors import ParseError
from .instance import SimilarityGraph


class HcTree:
    """Immutable rooted binary tree whose leaves are labelled 1..n."""

    def __init__(self, nested):
        left, right, label, parent = [], [], [], []
        queue = deque([(nested, -1)])
        while queue:
            item, par = queue.popleft()
            node = len(label)
            parent.append(par)
            if par >= 0:
                if left[par] == -2:
                    left[par] = node
                else:
                    right[par] = node
            if isinstance(item, (tuple, list)):
                if len(item) != 2:
                    raise ValueError(f"internal node must have exactly 2 children, got {len(item)}")
                left.append(-2)
                right.append(-2)
                label.append(0)
                queue.append((item[0], node))
                queue.append((item[1], node))
            else:
                lab = int(item)
                if lab != item or lab < 1:
                    raise ValueError(f"leaf label must be a positive integer, got {item!r}")
                left.append(-1)
                right.append(-1)
                label.append(lab)

        labels = sorted(x for x in label if x)
        n = len(labels)
        if labels != list(range(1, n + 1)):
            raise ValueError("leaf labels must be exactly 1..n with no repeats")

        size = [1] * len(label)
        for node in range(len(label) - 1, -1, -1):
            if left[node] >= 0:
                size[node] = size[left[node]] + size[right[node]]
        depth = [0] * len(label)
        for node in range(1, len(label)):
            depth[node] = depth[parent[node]] + 1
        leaf_node = [0] * (n + 1)
        for node, lab in enumerate(label):
            if lab:
                leaf_node[lab] = node

        self.n = n
        self._left = tuple(left)
        self._right = tuple(right)
        self._label = tuple(label)
        self._parent = tuple(parent)
        self._size = tuple(size)
        self._depth = tuple(depth)
        self._leaf_node = tuple(leaf_node)
        self.internal_nodes = tuple(v for v in range(len(label)) if left[v] >= 0)

    # structure -------------------------------------------------------------

    root = 0

    @property
    def num_nodes(self) -> int:
        return len(self._label)

    def is_leaf(self, node: int) -> bool:
        return self._left[node] < 0

    def children(self, node: int) -> tuple[int, int]:
        if self._left[node] < 0:
            raise ValueError(f"node {node} is a leaf")
        return self._left[node], self._right[node]

    def parent(self, node: int) -> int:
        return self._parent[node]

    def depth(self, node: int) -> int:
        return self._depth[node]

    def label(self, node: int) -> int:
        return self._label[node]

    def size(self, node: int) -> int:
        """Number of leaves below ``node``."""
        return self._size[node]

    def leaf_node(self, label: int) -> int:
        if not 1 <= label <= self.n:
            raise ValueError(f"leaf {label} outside 1..{self.n}")
        return self._leaf_node[label]

    def height(self) -> int:
        return max(self._depth)

    def leaves(self, node: int = 0) -> list[int]:
        """Leaf labels below ``node`` in left-to-right order."""
        out, stack = [], [node]
        while stack:
            v = stack.pop()
            if self._left[v] < 0:
                out.append(self._label[v])
            else:
                stack.append(self._right[v])
                stack.append(self._left[v])
        return out

    def lca(self, i: int, j: int) -> int:
        a, b = self.leaf_node(i), self.leaf_node(j)
        depth, parent = self._depth, self._parent
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a, b = parent[a], parent[b]
        return a

    def lca_size(self, i: int, j: int) -> int:
        return self._size[self.lca(i, j)]

    # conversions -----------------------------------------------------------

    def to_nested(self, node: int = 0):
        if self._left[node] < 0:
            return self._label[node]
        return (self.to_nested(self._left[node]), self.to_nested(self._right[node]))

    def newick(self) -> str:
        return _newick(self.to_nested()) + ";"

    def __eq__(self, other):
        return isinstance(other, HcTree) and self.to_nested() == other.to_nested()

    def __hash__(self):
        return hash(self.to_nested())

    def __repr__(self):
        return f"HcTree({self.to_nested()!r})"


class BisectionTree:
    """Depth-two tree: the root splits [n] in two and each side is a star.

    Stars are not binary, so this is kept apart from :class:`HcTree`. Two
    leaves on the same side have their LCA at that side's star node.
    """

    def __init__(self, left, right):
        self.left = tuple(sorted(left))
        self.right = tuple(sorted(right))
        self.n = len(self.left) + len(self.right)
        if sorted(self.left + self.right) != list(range(1, self.n + 1)):
            raise ValueError("bisection sides must partition 1..n")
        self._side = {x: 0 for x in self.left}
        self._side.update({x: 1 for x in self.right})

    def lca_size(self, i: int, j: int) -> int:
        if i == j or i not in self._side or j not in self._side:
            raise ValueError(f"invalid leaf pair ({i}, {j})")
        si, sj = self._side[i], self._side[j]
        if si != sj:
            return self.n
        return len(self.left) if si == 0 else len(self.right)

    def to_nested(self):
        return (self.left, self.right)

    def newick(self) -> str:
        left = ",".join(map(str, self.left))
        right = ",".join(map(str, self.right))
        return f"(({left}),({right}));"

    def __repr__(self):
        return f"BisectionTree({self.left}, {self.right})"


def _newick(item) -> str:
    if isinstance(item, tuple):
        return "(" + ",".join(_newick(x) for x in item) + ")"
    return str(item)


def parse_newick(text: str) -> HcTree:
    """Parse a binary Newick string with integer leaf labels."""
    s = "".join(text.split())
    if not s.endswith(";"):
        raise ParseError("Newick string must end with ';'")
    s = s[:-1]
    pos = 0

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids = [node()]
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(node())
            if pos >= len(s) or s[pos] != ")":
                raise ParseError(f"expected ')' at offset {pos}")
            pos += 1
            return tuple(kids)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError(f"expected a leaf label at offset {pos}")
        return int(s[start:pos])

    nested = node()
    if pos != len(s):
        raise ParseError(f"trailing characters at offset {pos}")
    try:
        return HcTree(nested)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def subtree_size_at_lca(t, i: int, j: int) -> int:
    """|T_ij|: leaves below the least common ancestor of leaves i and j."""
    if i == j:
        raise ValueError("leaves must be distinct")
    if not (1 <= i <= t.n and 1 <= j <= t.n):
        raise ValueError(f"leaf outside 1..{t.n}")
    return t.lca_size(i, j)


def _check_sizes(g: SimilarityGraph, t) -> None:
    if g.n != t.n:
        raise ValueError(f"tree has {t.n} leaves but graph has {g.n} points")


def edge_revenues(g: SimilarityGraph, t) -> list[Fraction]:
    """Per-edge revenue w_e (n - |T_e|), aligned with ``g.edges``."""
    _check_sizes(g, t)
    return [w * (g.n - t.lca_size(i, j)) for i, j, w in g.edges]


def revenue(g: SimilarityGraph, t) -> Fraction:
    """Sum of w_e (n - |T_e|); ``t`` may be an HcTree or a BisectionTree."""
    return sum(edge_revenues(g, t), Fraction(0))


def dasgupta_cost(g: SimilarityGraph, t) -> Fraction:
    """Sum of w_e |T_e|."""
    _check_sizes(g, t)
    return sum((w * t.lca_size(i, j) for i, j, w in g.edges), Fraction(0))


def bisection_tree(b, n: int) -> BisectionTree:
    """Two-level tree for bisection ``b``; its revenue equals ``bisection_revenue``."""
    if len(b.sides) != n:
        raise ValueError(f"bisection covers {len(b.sides)} leaves, expected {n}")
    return BisectionTree(b.left, b.right)
