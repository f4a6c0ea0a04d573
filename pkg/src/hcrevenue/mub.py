"""Max-Uncut Bisection: bisections, their revenue, and three solvers.

All solvers reject odd n. Uncut weight W_L + W_R is computed on integer
scaled weights (see ``SimilarityGraph.scaled_matrix``) and converted back
to ``Fraction`` so results are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceeded
from .instance import SimilarityGraph, rng_from_seed, total_weight

EXACT_CAP = 24
_CHUNK = 1 << 15


@dataclass(frozen=True)
class Bisection:
    """Side bit per leaf: ``sides[k - 1]`` is the side of leaf k."""

    sides: tuple[int, ...]

    def __post_init__(self):
        sides = tuple(int(s) for s in self.sides)
        if any(s not in (0, 1) for s in sides):
            raise ValueError("side bits must be 0 or 1")
        n, ones = len(sides), sum(sides)
        if n < 2 or {ones, n - ones} != {n // 2, n - n // 2}:
            raise ValueError(f"sides of sizes {n - ones}/{ones} are not balanced")
        object.__setattr__(self, "sides", sides)

    @classmethod
    def from_left(cls, left, n: int) -> "Bisection":
        left = set(left)
        return cls(tuple(0 if k in left else 1 for k in range(1, n + 1)))

    @classmethod
    def from_bits(cls, bits: str) -> "Bisection":
        return cls(tuple(int(c) for c in bits.strip()))

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def left(self) -> tuple[int, ...]:
        return tuple(k for k, s in enumerate(self.sides, 1) if s == 0)

    @property
    def right(self) -> tuple[int, ...]:
        return tuple(k for k, s in enumerate(self.sides, 1) if s == 1)

    def to_bits(self) -> str:
        return "".join(map(str, self.sides))

    def weights(self, g: SimilarityGraph) -> tuple[Fraction, Fraction, Fraction]:
        """``(W_L, W_R, cut_weight)`` for graph ``g``."""
        if g.n != self.n:
            raise ValueError(f"bisection has {self.n} leaves but graph has {g.n}")
        wl = wr = cut = Fraction(0)
        for i, j, w in g.edges:
            si, sj = self.sides[i - 1], self.sides[j - 1]
            if si != sj:
                cut += w
            elif si == 0:
                wl += w
            else:
                wr += w
        return wl, wr, cut

    def uncut_weight(self, g: SimilarityGraph) -> Fraction:
        wl, wr, _ = self.weights(g)
        return wl + wr


def _require_even(g: SimilarityGraph) -> None:
    if g.n % 2:
        raise ValueError(f"bisections need an even number of points, got n={g.n}")


def bisection_revenue(g: SimilarityGraph, b: Bisection) -> Fraction:
    """Revenue of the two-level tree for ``b``: (n/2)(W_L + W_R)."""
    _require_even(g)
    return Fraction(g.n, 2) * b.uncut_weight(g)


def _combos(n: int):
    """Sides containing leaf 1, as 0-based index rows in lexicographic order."""
    half = n // 2
    flat = itertools.chain.from_iterable(itertools.combinations(range(1, n), half - 1))
    buf = np.fromiter(flat, dtype=np.int64)
    return buf.reshape(-1, half - 1)


def mub_exact(g: SimilarityGraph, cap: int = EXACT_CAP) -> Bisection:
    """Best bisection by exhaustive enumeration of the side holding leaf 1.

    Ties resolve to the lexicographically smallest such side.
    """
    _require_even(g)
    n = g.n
    if n > cap:
        raise CapExceeded(f"mub_exact is capped at n={cap}, got n={n}")
    if n == 2:
        return Bisection((0, 1))
    _, mat = g.scaled_matrix()
    iu, ju = np.nonzero(np.triu(mat != 0))
    w = mat[iu, ju]

    best_val, best_row = None, None
    rest = _combos(n)
    for start in range(0, len(rest), _CHUNK):
        chunk = rest[start:start + _CHUNK]
        member = np.zeros((len(chunk), n), dtype=bool)
        member[:, 0] = True
        np.put_along_axis(member, chunk, True, axis=1)
        uncut = (member[:, iu] == member[:, ju]) @ w if len(w) else np.zeros(len(chunk), dtype=np.int64)
        k = int(np.argmax(uncut))
        if best_val is None or uncut[k] > best_val:
            best_val, best_row = uncut[k], chunk[k]
    left = {1} | {int(x) + 1 for x in best_row}
    return Bisection.from_left(left, n)


def _swap_gains(mat: np.ndarray, sides: np.ndarray) -> np.ndarray:
    """gain[a, b] of exchanging a (side 0) with b (side 1), in scaled units."""
    on1 = sides == 1
    to1 = mat[:, on1].sum(axis=1)
    to0 = mat[:, ~on1].sum(axis=1)
    d = to1 - to0
    return d[:, None] - d[None, :] - 2 * mat


def mub_local_search(g: SimilarityGraph, seed: int, start: Bisection | None = None) -> Bisection:
    """Best-improvement pair-swap local search from a seeded random bisection.

    Each step applies the cross-side swap with the largest gain in uncut
    weight (first in (a, b) order on ties) and stops at a swap-local optimum.
    """
    _require_even(g)
    if start is None:
        start = mub_random(g, seed)
    elif start.n != g.n:
        raise ValueError("start bisection does not match the graph")
    _, mat = g.scaled_matrix()
    sides = np.array(start.sides)
    while True:
        zeros = np.flatnonzero(sides == 0)
        ones = np.flatnonzero(sides == 1)
        gain = _swap_gains(mat, sides)[np.ix_(zeros, ones)]
        k = int(np.argmax(gain))
        a, b = divmod(k, len(ones))
        if gain[a, b] <= 0:
            return Bisection(tuple(int(s) for s in sides))
        sides[zeros[a]], sides[ones[b]] = 1, 0


def mub_random(g: SimilarityGraph, seed: int) -> Bisection:
    """Uniformly random balanced bisection."""
    _require_even(g)
    perm = rng_from_seed(seed).permutation(g.n)
    return Bisection.from_left((int(x) + 1 for x in perm[: g.n // 2]), g.n)


def all_bisections(n: int):
    """Every balanced bisection of [n] once, with leaf 1 on side 0."""
    if n % 2:
        raise ValueError("n must be even")
    for rest in itertools.combinations(range(2, n + 1), n // 2 - 1):
        yield Bisection.from_left((1,) + rest, n)


SOLVERS = {
    "exact": lambda g, seed: mub_exact(g),
    "local": mub_local_search,
    "random": mub_random,
}


def solve(g: SimilarityGraph, solver: str, seed: int = 0) -> Bisection:
    try:
        fn = SOLVERS[solver]
    except KeyError:
        raise ValueError(f"unknown MUB solver {solver!r}; choose from {sorted(SOLVERS)}") from None
    return fn(g, seed)


def cut_weight(g: SimilarityGraph, b: Bisection) -> Fraction:
    return total_weight(g) - b.uncut_weight(g)
