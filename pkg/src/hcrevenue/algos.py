"""Tree-building algorithms for the revenue objective.

- ``random_tree``: recursive uniformly random balanced splits.
- ``average_linkage``: agglomerative merging by highest average similarity.
- ``bisect_then_random``: a Max-Uncut Bisection for the root split, then
  random balanced splits below it.
- ``extract_half_revenue_bisection``: deterministic bisection holding at
  least half of a given tree's revenue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hctree import HcTree
from .instance import SimilarityGraph, rng_from_seed
from .mub import Bisection, bisection_revenue, solve
from .ordering import conditional_expectation_ordering, leaf_ordering

ALGORITHMS = ("rand", "avglink", "bisect-random", "opt")
RANDOMIZED = {"rand", "bisect-random"}


@dataclass(frozen=True)
class AlgorithmConfig:
    name: str
    solver: str | None = None
    seed: int | None = None
    trials: int = 1

    def __post_init__(self):
        if self.name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.name!r}")
        if self.trials < 1:
            raise ValueError("trial count must be at least 1")
        if self.name in RANDOMIZED and self.seed is None:
            raise ValueError(f"{self.name} is randomized and needs a seed")
        if self.name == "bisect-random" and self.solver not in ("exact", "local", "random"):
            raise ValueError(f"bisect-random needs a solver in exact/local/random, got {self.solver!r}")

    @property
    def p(self) -> str | None:
        """Known MUB approximation ratio of the first cut, as a label."""
        if self.name != "bisect-random":
            return None
        return {"exact": "1", "local": ">=0.8776 (local-search stand-in)", "random": "none"}[self.solver]


def _random_split(leaves, rng: np.random.Generator):
    if len(leaves) == 1:
        return leaves[0]
    perm = rng.permutation(len(leaves))
    k = (len(leaves) + 1) // 2
    left = sorted(leaves[x] for x in perm[:k])
    right = sorted(leaves[x] for x in perm[k:])
    return (_random_split(left, rng), _random_split(right, rng))


def random_tree(n: int, seed: int) -> HcTree:
    """Split every cluster of size m into uniform random halves of sizes ceil(m/2), floor(m/2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return HcTree(_random_split(list(range(1, n + 1)), rng_from_seed(seed)))


def average_linkage(g: SimilarityGraph) -> HcTree:
    """Merge the pair of clusters with the largest average edge weight until one remains.

    Ties go to the smallest (min leaf of A, min leaf of B); A becomes the
    left child. Plain O(n^3) with cluster-pair weight sums kept up to date.
    """
    n = g.n
    # cluster key = smallest leaf in it
    trees = {k: k for k in range(1, n + 1)}
    sizes = {k: 1 for k in range(1, n + 1)}
    between = {}
    for i, j, w in g.edges:
        between[(i, j)] = w

    while len(trees) > 1:
        keys = sorted(trees)
        best = None
        for x, a in enumerate(keys):
            for b in keys[x + 1:]:
                avg = Fraction(between.get((a, b), 0), sizes[a] * sizes[b])
                if best is None or avg > best[0]:
                    best = (avg, a, b)
        _, a, b = best
        trees[a] = (trees[a], trees.pop(b))
        sizes[a] += sizes.pop(b)
        for c in trees:
            if c == a:
                continue
            ab = between.pop((min(a, c), max(a, c)), 0)
            bb = between.pop((min(b, c), max(b, c)), 0)
            if ab or bb:
                between[(min(a, c), max(a, c))] = ab + bb
        between.pop((a, b), None)
    return HcTree(trees[1])


def bisect_then_random(g: SimilarityGraph, mub: str, seed: int,
                       bisection: Bisection | None = None) -> HcTree:
    """Root split from the chosen MUB solver, then random balanced splits per side.

    A precomputed ``bisection`` skips the solver; used to reuse a
    deterministic exact solution across many trials.
    """
    if g.n % 2:
        raise ValueError(f"bisect-then-random needs an even number of points, got n={g.n}")
    rng = rng_from_seed(seed)
    solver_seed = int(rng.integers(0, 2**63))
    if bisection is None:
        bisection = solve(g, mub, solver_seed)
    side1, side2 = list(bisection.left), list(bisection.right)
    if 1 not in side1:
        side1, side2 = side2, side1
    return HcTree((_random_split(side1, rng), _random_split(side2, rng)))


def window_bisections(order) -> list[Bisection]:
    """The n/2 bisections {x, ..., x + n/2 - 1} vs rest of a leaf sequence, x = 1..n/2."""
    n = len(order)
    half = n // 2
    return [Bisection.from_left(order[x:x + half], n) for x in range(half)]


def extract_half_revenue_bisection(g: SimilarityGraph, t: HcTree) -> Bisection:
    """Bisection with revenue at least half of ``revenue(g, t)``.

    Orders the leaves with the conditional-expectation orientation, then
    returns the best of the n/2 contiguous windows.
    """
    if g.n % 2:
        raise ValueError(f"bisections need an even number of points, got n={g.n}")
    if t.n != g.n:
        raise ValueError(f"tree has {t.n} leaves but graph has {g.n} points")
    pi = leaf_ordering(t, conditional_expectation_ordering(g, t))
    best, best_rev = None, None
    for b in window_bisections(pi.sequence()):
        r = bisection_revenue(g, b)
        if best is None or r > best_rev:
            best, best_rev = b, r
    return best


def run_algorithm(g: SimilarityGraph, name: str, seed: int = 0, solver: str = "exact",
                  bisection: Bisection | None = None) -> HcTree:
    """Dispatch by CLI algorithm name."""
    if name == "rand":
        return random_tree(g.n, seed)
    if name == "avglink":
        return average_linkage(g)
    if name == "bisect-random":
        return bisect_then_random(g, solver, seed, bisection=bisection)
    if name == "opt":
        from .oracle import opt_tree

        return opt_tree(g).witness
    raise ValueError(f"unknown algorithm {name!r}")



def uniform_binary_tree(n: int, seed: int) -> HcTree:
    """Uniform draw from all (2n-3)!! rooted binary trees on leaves 1..n.

    Grows the tree by inserting leaf k+1 above a uniformly chosen node of the
    current tree; every final tree arises from exactly one insertion sequence.
    Used to build test corpora with unbalanced shapes.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = rng_from_seed(seed)
    # node -> [left, right] for internal nodes; leaves are 1..n, internals are negative
    kids = {}
    parent = {1: None}
    root = 1
    next_internal = -1
    for leaf in range(2, n + 1):
        nodes = list(parent)
        v = nodes[int(rng.integers(len(nodes)))]
        u, next_internal = next_internal, next_internal - 1
        p = parent[v]
        kids[u] = [v, leaf] if rng.random() < 0.5 else [leaf, v]
        parent[u], parent[v], parent[leaf] = p, u, u
        if p is None:
            root = u
        else:
            kids[p][kids[p].index(v)] = u

    def nested(v):
        return v if v > 0 else (nested(kids[v][0]), nested(kids[v][1]))

    return HcTree(nested(root))
