"""Similarity graphs: data model, generators and edge-list I/O.

Leaves are labelled 1..n. Weights are kept as exact ``Fraction`` values so
that the bound checks elsewhere in the package never compare floats.

Edge-list format::

    # comment lines are ignored
    n m
    i j w        (m lines, single spaces, w a nonnegative decimal)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ParseError

_DECIMAL = re.compile(r"^(\d+(\.\d*)?|\.\d+)$")

SEED_MASK = (1 << 64) - 1


def rng_from_seed(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed (negative seeds wrap modulo 2**64)."""
    return np.random.default_rng(int(seed) & SEED_MASK)


def _as_weight(w) -> Fraction:
    if isinstance(w, float):
        # floats go through their shortest repr so 0.1 means 1/10
        w = repr(w)
    return Fraction(w)


@dataclass(frozen=True)
class SimilarityGraph:
    """n data points joined by nonnegative similarity edges.

    ``edges`` is normalized on construction: endpoints ordered ``i < j``,
    sorted by ``(i, j)``, weights converted to ``Fraction``. Zero-weight
    edges are dropped since they are equivalent to absent ones.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...] = ()

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        seen = set()
        normalized = []
        for i, j, w in self.edges:
            i, j, w = int(i), int(j), _as_weight(w)
            if i == j:
                raise ValueError(f"self-loop on leaf {i}")
            if i > j:
                i, j = j, i
            if i < 1 or j > self.n:
                raise ValueError(f"edge ({i}, {j}) has an endpoint outside 1..{self.n}")
            if w < 0:
                raise ValueError(f"edge ({i}, {j}) has negative weight {w}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            if w != 0:
                normalized.append((i, j, w))
        normalized.sort()
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, i: int, j: int) -> Fraction:
        if i > j:
            i, j = j, i
        return self._weights().get((i, j), Fraction(0))

    def _weights(self):
        cache = self.__dict__.get("_wcache")
        if cache is None:
            cache = {(i, j): w for i, j, w in self.edges}
            object.__setattr__(self, "_wcache", cache)
        return cache

    def scaled_weights(self) -> tuple[int, list[int]]:
        """Return ``(scale, ints)`` with ``ints[k] == edges[k].w * scale`` exactly."""
        scale = 1
        for _, _, w in self.edges:
            scale = scale * w.denominator // math.gcd(scale, w.denominator)
        return scale, [int(w * scale) for _, _, w in self.edges]

    def scaled_matrix(self) -> tuple[int, np.ndarray]:
        """Dense symmetric weight matrix (0-based) scaled to integers.

        Falls back to an object array when int64 could overflow.
        """
        scale, ints = self.scaled_weights()
        dtype = np.int64 if sum(ints) < 2**60 else object
        mat = np.zeros((self.n, self.n), dtype=dtype)
        for (i, j, _), w in zip(self.edges, ints):
            mat[i - 1, j - 1] = w
            mat[j - 1, i - 1] = w
        return scale, mat

    def scaled(self, factor) -> "SimilarityGraph":
        factor = _as_weight(factor)
        return SimilarityGraph(self.n, tuple((i, j, w * factor) for i, j, w in self.edges))


def total_weight(g: SimilarityGraph) -> Fraction:
    return sum((w for _, _, w in g.edges), Fraction(0))


def gen_matching(n: int) -> SimilarityGraph:
    """Perfect matching {2k-1, 2k} of unit weight edges."""
    if n < 2 or n % 2:
        raise ValueError(f"matching needs an even n >= 2, got {n}")
    return SimilarityGraph(n, tuple((2 * k - 1, 2 * k, 1) for k in range(1, n // 2 + 1)))


def gen_random(n: int, density: float, max_weight: int, seed: int) -> SimilarityGraph:
    """G(n, p) graph with integer weights uniform on 1..max_weight.

    Pairs are visited in lexicographic order and each consumes one uniform
    draw and one weight draw, so the output depends only on the arguments.
    """
    if not 0 <= density <= 1:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    if max_weight < 1 or int(max_weight) != max_weight:
        raise ValueError(f"max_weight must be a positive integer, got {max_weight}")
    rng = rng_from_seed(seed)
    npairs = n * (n - 1) // 2
    keep = rng.random(npairs) < density
    weights = rng.integers(1, int(max_weight) + 1, size=npairs)
    edges = []
    k = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if keep[k]:
                edges.append((i, j, int(weights[k])))
            k += 1
    return SimilarityGraph(n, tuple(edges))


def pad_to_even(g: SimilarityGraph) -> SimilarityGraph:
    """Add one isolated leaf when n is odd; otherwise return ``g`` unchanged."""
    if g.n % 2 == 0:
        return g
    return SimilarityGraph(g.n + 1, g.edges)


def _parse_weight(token: str, lineno: int) -> Fraction:
    if token.startswith("-"):
        raise ParseError(f"negative weight {token!r}", lineno)
    if not _DECIMAL.match(token):
        raise ParseError(f"weight {token!r} is not a nonnegative decimal", lineno)
    return Fraction(token)


def parse_graph(text: str | Iterable[str]) -> SimilarityGraph:
    """Read the edge-list format. Errors carry the offending line number."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("missing header line 'n m'")

    lineno, header = rows[0]
    if len(header) != 2 or not all(t.isdigit() for t in header):
        raise ParseError("header must be two nonnegative integers 'n m'", lineno)
    n, m = int(header[0]), int(header[1])
    if n < 1:
        raise ParseError("n must be at least 1", lineno)
    body = rows[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise ParseError(f"header declares {m} edges but {len(body)} follow", last)

    edges = []
    seen = set()
    for lineno, tokens in body:
        if len(tokens) != 3:
            raise ParseError("edge line must be 'i j w'", lineno)
        a, b, wtok = tokens
        if not (a.isdigit() and b.isdigit()):
            raise ParseError("endpoints must be positive integers", lineno)
        i, j = int(a), int(b)
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"endpoint out of range 1..{n}", lineno)
        if i == j:
            raise ParseError(f"self-loop on leaf {i}", lineno)
        w = _parse_weight(wtok, lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append((i, j, w))
    return SimilarityGraph(n, tuple(edges))


def format_weight(w: Fraction) -> str:
    """Exact decimal string for ``w``; raises if ``w`` has no finite expansion."""
    w = Fraction(w)
    if w.denominator == 1:
        return str(w.numerator)
    d = w.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        raise ValueError(f"weight {w} has no finite decimal expansion")
    digits = max(twos, fives)
    scaled = w.numerator * 10**digits // w.denominator
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")


def serialize_graph(g: SimilarityGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out += [f"{i} {j} {format_weight(w)}" for i, j, w in g.edges]
    return "\n".join(out) + "\n"


def read_graph(path) -> SimilarityGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: SimilarityGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_graph(g))
