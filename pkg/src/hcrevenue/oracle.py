"""Exact ground truth for small instances.

``opt_tree_bruteforce`` visits every rooted binary tree on leaves 1..n,
(2n-3)!! of them, built by inserting leaf k+1 above each of the 2k-1 nodes
of every tree on k leaves. Trees are held as rows of leaf-set bitmasks (one
per node), which lets numpy expand and score whole batches at once.

``opt_tree_dp`` solves the same problem by dynamic programming over leaf
subsets and reaches larger n; the two are cross-checked in the tests.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceeded
from .hctree import HcTree
from .instance import SimilarityGraph, SEED_MASK
from .mub import all_bisections, bisection_revenue

BRUTEFORCE_CAP = 10
COUNT_CAP = 12
DP_CAP = 14
_CACHE_MAX_N = 8
_BATCH_ROWS = 1 << 20


@dataclass(frozen=True)
class OracleResult:
    optimum: Fraction
    witness: object
    search_space: int


def double_factorial_odd(n: int) -> int:
    """(2n - 3)!!, the number of rooted binary trees on n labelled leaves."""
    out = 1
    for k in range(3, 2 * n - 2, 2):
        out *= k
    return out


def _expand(masks: np.ndarray, k: int) -> np.ndarray:
    """Insert leaf k+1 above every node of every tree in ``masks`` (shape (T, 2k-1))."""
    bit = masks.dtype.type(1 << k)
    t, s = masks.shape
    v = masks[:, :, None]
    m = masks[:, None, :]
    above = ((m & v) == v) & (m != v)
    grown = np.where(above, m | bit, m)
    new_cols = np.concatenate(
        [(v | bit), np.full((t, s, 1), bit, dtype=masks.dtype)], axis=2)
    return np.concatenate([grown, new_cols], axis=2).reshape(t * s, s + 2)


def iter_tree_masks(n: int, batch_rows: int = _BATCH_ROWS):
    """Yield batches of trees on n leaves in canonical insertion order.

    Each row lists the leaf sets of the tree's 2n-1 nodes as bitmasks
    (bit k-1 stands for leaf k).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    dtype = np.int16 if n < 15 else np.int32

    def rec(masks, k):
        if k == n:
            yield masks
            return
        step = max(1, batch_rows // (2 * k - 1))
        for start in range(0, len(masks), step):
            yield from rec(_expand(masks[start:start + step], k), k + 1)

    yield from rec(np.ones((1, 1), dtype=dtype), 1)


def enumerate_tree_count(n: int) -> int:
    """Number of trees the enumerator actually visits for n leaves."""
    if n > COUNT_CAP:
        raise CapExceeded(f"tree enumeration is capped at n={COUNT_CAP}, got n={n}")
    return sum(len(batch) for batch in iter_tree_masks(n))


@functools.lru_cache(maxsize=None)
def _popcount_table(n: int) -> np.ndarray:
    return np.array([bin(x).count("1") for x in range(1 << n)], dtype=np.int16)


def _lca_sizes(masks: np.ndarray, pairs, n: int) -> np.ndarray:
    """|T_ij| for each tree row and each leaf pair, shape (T, len(pairs))."""
    sizes = _popcount_table(n)[masks]
    out = np.empty((len(masks), len(pairs)), dtype=np.int16)
    for c, (i, j) in enumerate(pairs):
        pb = (1 << (i - 1)) | (1 << (j - 1))
        holds = (masks & pb) == pb
        out[:, c] = np.where(holds, sizes, n + 1).min(axis=1)
    return out


@functools.lru_cache(maxsize=None)
def _all_trees(n: int):
    masks = np.concatenate(list(iter_tree_masks(n)))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return masks, pairs, _lca_sizes(masks, pairs, n).astype(np.int64)


def masks_to_tree(row, n: int) -> HcTree:
    """Rebuild an HcTree from a bitmask row; the child holding the smaller leaf goes left."""
    masks = sorted({int(x) for x in row}, key=lambda x: bin(x).count("1"))

    def build(mask):
        if mask & (mask - 1) == 0:
            return mask.bit_length()
        subs = [x for x in masks if x != mask and x & mask == x]
        # children are the maximal proper subsets
        kids = [x for x in subs if not any(y != x and y & x == x for y in subs)]
        a, b = kids
        if (a & -a) > (b & -b):
            a, b = b, a
        return (build(a), build(b))

    return HcTree(build((1 << n) - 1))


def opt_tree_bruteforce(g: SimilarityGraph, cap: int = BRUTEFORCE_CAP) -> OracleResult:
    """Best revenue over every binary tree; first optimum in enumeration order wins."""
    n = g.n
    if n > cap:
        raise CapExceeded(f"brute-force oracle is capped at n={cap}, got n={n}")
    if n == 1:
        return OracleResult(Fraction(0), HcTree(1), 1)
    scale, ints = g.scaled_weights()
    total = sum(ints)
    edge_pairs = [(i, j) for i, j, _ in g.edges]

    if n <= _CACHE_MAX_N:
        masks, pairs, lca = _all_trees(n)
        col = {p: c for c, p in enumerate(pairs)}
        w = np.zeros(len(pairs), dtype=np.int64)
        for p, x in zip(edge_pairs, ints):
            w[col[p]] = x
        cost = lca @ w
        k = int(np.argmin(cost))
        best_cost, best_row, visited = int(cost[k]), masks[k], len(masks)
    else:
        w = np.array(ints, dtype=np.int64)
        best_cost, best_row, visited = None, None, 0
        for batch in iter_tree_masks(n):
            visited += len(batch)
            if edge_pairs:
                cost = _lca_sizes(batch, edge_pairs, n).astype(np.int64) @ w
            else:
                cost = np.zeros(len(batch), dtype=np.int64)
            k = int(np.argmin(cost))
            if best_cost is None or cost[k] < best_cost:
                best_cost, best_row = int(cost[k]), batch[k]
    optimum = Fraction(n * total - best_cost, scale)
    return OracleResult(optimum, masks_to_tree(best_row, n), visited)


def opt_tree_dp(g: SimilarityGraph, cap: int = DP_CAP) -> OracleResult:
    """Optimal revenue by dynamic programming over leaf subsets, O(3^n).

    A split of cluster S into A and B earns (n - |S|) times the weight
    crossing between A and B; the optimum over S is the best split plus the
    optima of both halves. ``search_space`` counts the splits examined.
    """
    n = g.n
    if n > cap:
        raise CapExceeded(f"subset DP oracle is capped at n={cap}, got n={n}")
    scale, ints = g.scaled_weights()
    nbr = [[0] * n for _ in range(n)]
    for (i, j, _), x in zip(g.edges, ints):
        nbr[i - 1][j - 1] = x
        nbr[j - 1][i - 1] = x

    full = (1 << n) - 1
    inside = [0] * (full + 1)
    size = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        li = low.bit_length() - 1
        row = nbr[li]
        extra = 0
        r = rest
        while r:
            b = r & -r
            extra += row[b.bit_length() - 1]
            r ^= b
        inside[mask] = inside[rest] + extra
        size[mask] = size[rest] + 1

    best = [0] * (full + 1)
    split = [0] * (full + 1)
    examined = 0
    for mask in range(1, full + 1):
        if size[mask] < 2:
            continue
        low = mask & -mask
        rest = mask ^ low
        factor = n - size[mask]
        top, arg = None, 0
        sub = (rest - 1) & rest
        # A always holds the lowest leaf, so each unordered split is seen once
        while True:
            a = low | sub
            b = mask ^ a
            val = best[a] + best[b] + factor * (inside[mask] - inside[a] - inside[b])
            examined += 1
            if top is None or val > top:
                top, arg = val, a
            if sub == 0:
                break
            sub = (sub - 1) & rest
        best[mask], split[mask] = top, arg

    def build(mask):
        if size[mask] == 1:
            return mask.bit_length()
        a = split[mask]
        return (build(a), build(mask ^ a))

    return OracleResult(Fraction(best[full], scale), HcTree(build(full)), examined)


def opt_tree(g: SimilarityGraph, cap: int = BRUTEFORCE_CAP) -> OracleResult:
    """Exact optimum used by the CLI: enumeration up to n=8, subset DP above."""
    if g.n > cap:
        raise CapExceeded(f"oracle is capped at n={cap}, got n={g.n}")
    if g.n <= _CACHE_MAX_N:
        return opt_tree_bruteforce(g)
    return opt_tree_dp(g)


def best_bisection_bruteforce(g: SimilarityGraph) -> OracleResult:
    """Maximum bisection revenue by plain enumeration of every bisection."""
    best, arg, count = None, None, 0
    for b in all_bisections(g.n):
        count += 1
        r = bisection_revenue(g, b)
        if best is None or r > best:
            best, arg = r, b
    return OracleResult(best, arg, count)


@dataclass(frozen=True)
class RandEstimate:
    trials: int
    edge_mean: tuple[Fraction, ...]
    edge_stderr: tuple[float, ...]
    total_mean: Fraction
    total_stderr: float


def trial_seeds(seed: int, trials: int) -> list[int]:
    """Independent per-trial seeds derived from one master seed."""
    ss = np.random.SeedSequence(int(seed) & SEED_MASK)
    return [int(x) for x in ss.generate_state(trials, dtype=np.uint64)]


def rand_revenue_estimate(g: SimilarityGraph, trials: int, seed: int) -> RandEstimate:
    """Monte Carlo mean revenue of ``random_tree``, per edge and in total."""
    from .algos import random_tree

    if trials < 1:
        raise ValueError("trials must be at least 1")
    per_edge = np.zeros((trials, g.m), dtype=object)
    for r, s in enumerate(trial_seeds(seed, trials)):
        t = random_tree(g.n, s)
        for c, (i, j, w) in enumerate(g.edges):
            per_edge[r, c] = w * (g.n - t.lca_size(i, j))
    totals = per_edge.sum(axis=1) if g.m else np.zeros(trials, dtype=object)

    def mean(col):
        return sum(col, Fraction(0)) / trials

    def stderr(col):
        if trials < 2:
            return float("nan")
        return float(np.std(np.asarray(col, dtype=float), ddof=1) / np.sqrt(trials))

    return RandEstimate(
        trials=trials,
        edge_mean=tuple(mean(per_edge[:, c]) for c in range(g.m)),
        edge_stderr=tuple(stderr(per_edge[:, c]) for c in range(g.m)),
        total_mean=mean(totals),
        total_stderr=stderr(totals),
    )
