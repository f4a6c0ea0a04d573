"""Seeded property suites behind ``hcrev verify``.

Every suite returns a :class:`SuiteReport` with per-check pass counts. All
comparisons are exact (``Fraction``) except the Monte Carlo ``alg-ratio``
suite, which applies a three-standard-error margin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algos import bisect_then_random, extract_half_revenue_bisection, uniform_binary_tree, window_bisections
from .hctree import dasgupta_cost, revenue
from .instance import gen_matching, gen_random, rng_from_seed, total_weight
from .mub import bisection_revenue, mub_exact
from .oracle import (
    best_bisection_bruteforce,
    double_factorial_odd,
    enumerate_tree_count,
    opt_tree_bruteforce,
    opt_tree_dp,
    trial_seeds,
)
from .ordering import (
    all_orientations,
    conditional_expectation_ordering,
    half_tree_bound,
    leaf_ordering,
    ordering_distance,
    sample_orientation,
    weighted_ordering_cost,
)

ALG_RATIO_TARGET = 0.585


@dataclass
class SuiteReport:
    name: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    stats: list = field(default_factory=list)

    def check(self, label: str, ok: bool, detail=None) -> None:
        passed, total = self.counts.get(label, (0, 0))
        self.counts[label] = (passed + bool(ok), total + 1)
        if not ok and len(self.failures) < 20:
            self.failures.append((label, detail))

    @property
    def checks(self) -> int:
        return sum(t for _, t in self.counts.values())

    @property
    def violations(self) -> int:
        return sum(t - p for p, t in self.counts.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def lines(self) -> list[str]:
        out = [f"{self.name}: {label}: {p}/{t} pass" for label, (p, t) in self.counts.items()]
        out += [f"{self.name}: FAIL {label}: {detail}" for label, detail in self.failures]
        out.append(f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({self.checks - self.violations}/{self.checks})")
        return out


def random_corpus(count: int, n_values, seed: int, max_weight: int = 10, nonempty: bool = True):
    """``count`` seeded G(n, p) instances, n cycling through ``n_values``.

    Density is drawn per instance from [0.2, 0.9]. With ``nonempty`` an
    edgeless draw is replaced by the next seed.
    """
    n_values = list(n_values)
    rng = rng_from_seed(seed)
    out = []
    for k in range(count):
        n = n_values[k % len(n_values)]
        while True:
            g = gen_random(n, float(rng.uniform(0.2, 0.9)), max_weight, int(rng.integers(0, 2**63)))
            if g.m or not nonempty or n < 2:
                break
        out.append(g)
    return out


def complementarity(instances: int = 100, trees_per_instance: int = 10, n_max: int = 16, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("complementarity")
    corpus = random_corpus(instances, range(2, n_max + 1), seed, nonempty=False)
    seeds = iter(trial_seeds(seed + 1, instances * trees_per_instance))
    for g in corpus:
        bound = (g.n - 2) * total_weight(g) if g.n >= 2 else 0
        for _ in range(trees_per_instance):
            t = uniform_binary_tree(g.n, next(seeds))
            r, c = revenue(g, t), dasgupta_cost(g, t)
            rep.check("R + C = n W", r + c == g.n * total_weight(g), (g, t.newick()))
            rep.check("0 <= R <= (n-2) W", 0 <= r <= bound, (g, t.newick()))
    return rep


def lemma_y_expectation(n_values=(4, 6, 8), trees_per_n: int = 50, seed: int = 0) -> SuiteReport:
    """Exhaustive over orientations: sums of y_e, of positions, and y_e <= |T_e|."""
    rep = SuiteReport("lemma-y-expectation")
    seeds = iter(trial_seeds(seed, len(n_values) * trees_per_n))
    for n in n_values:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        for _ in range(trees_per_n):
            t = uniform_binary_tree(n, next(seeds))
            ysum = dict.fromkeys(pairs, 0)
            possum = [0] * n
            count = 0
            observation_ok = True
            for o in all_orientations(t):
                pi = leaf_ordering(t, o)
                count += 1
                for p in pairs:
                    y = ordering_distance(pi, p)
                    ysum[p] += y
                    observation_ok &= y <= t.lca_size(*p)
                for k in range(n):
                    possum[k] += pi.positions[k]
            rep.check("orientation count = 2^(n-1)", count == 2 ** (n - 1), t.newick())
            for p in pairs:
                rep.check("2 sum_o y_e = |T_e| 2^(n-1)", 2 * ysum[p] == t.lca_size(*p) * count, (t.newick(), p))
            for k in range(n):
                rep.check("2 sum_o pi(k) = (n+1) 2^(n-1)", 2 * possum[k] == (n + 1) * count, (t.newick(), k + 1))
            rep.check("y_e <= |T_e| for every orientation", observation_ok, t.newick())
    return rep


def window_cut_counts(order, i: int, j: int) -> int:
    """How many of the n/2 windows over ``order`` separate leaves i and j."""
    return sum(b.sides[i - 1] != b.sides[j - 1] for b in window_bisections(order))


def cut_probability(instances: int = 100, n_values=(6, 8, 10, 12), seed: int = 0) -> SuiteReport:
    rep = SuiteReport("cut-probability")
    corpus = random_corpus(instances, n_values, seed)
    seeds = iter(trial_seeds(seed + 1, 2 * instances))
    for g in corpus:
        n, half = g.n, g.n // 2
        t = uniform_binary_tree(n, next(seeds))
        pi = leaf_ordering(t, sample_orientation(t, next(seeds)))
        order = pi.sequence()
        windows = window_bisections(order)
        revs = [bisection_revenue(g, b) for b in windows]
        floor_total = Fraction(0)
        for i, j, w in g.edges:
            y = ordering_distance(pi, (i, j))
            cuts = window_cut_counts(order, i, j)
            if y <= half - 1:
                rep.check("cut count = y (y <= n/2 - 1)", cuts == y, (i, j, y, cuts))
            mean_rev = Fraction(half - cuts, half) * w * half
            floor = Fraction(1, 2) * w * (n - 2 * y)
            rep.check("window mean R_X(e) >= w(n - 2y)/2", mean_rev >= floor and mean_rev >= 0, (i, j, y))
            floor_total += floor
        rep.check("window mean R(X) >= sum_e w(n - 2y)/2", sum(revs, Fraction(0)) / half >= floor_total, g)
    return rep


def half_bisection(instances: int = 200, n_values=(4, 6, 8), seed: int = 0) -> SuiteReport:
    """Best bisection keeps half of OPT; exact MUB agrees with plain bisection enumeration."""
    rep = SuiteReport("half-bisection")
    for n in sorted(set(n_values)):
        rep.check("enumerator visits (2n-3)!! trees", enumerate_tree_count(n) == double_factorial_odd(n), n)
    for g in random_corpus(instances, n_values, seed):
        opt = opt_tree_bruteforce(g).optimum
        b = mub_exact(g)
        best = bisection_revenue(g, b)
        rep.check("(n/2) uncut(mub_exact) >= OPT/2", best >= opt / 2, (g, best, opt))
        rep.check("mub_exact = best bisection by enumeration", best == best_bisection_bruteforce(g).optimum, g)
    return rep


def extraction(instances: int = 100, trees_per_instance: int = 20, n_values=(6, 8, 10), seed: int = 0) -> SuiteReport:
    rep = SuiteReport("extraction")
    corpus = random_corpus(instances, n_values, seed)
    seeds = iter(trial_seeds(seed + 1, instances * trees_per_instance))
    for g in corpus:
        for _ in range(trees_per_instance):
            t = uniform_binary_tree(g.n, next(seeds))
            pi = leaf_ordering(t, conditional_expectation_ordering(g, t))
            rep.check("Y_pi <= sum w|T_e|/2", weighted_ordering_cost(g, pi) <= half_tree_bound(g, t), (g, t.newick()))
            b = extract_half_revenue_bisection(g, t)
            rep.check("R(X) >= R(T)/2", bisection_revenue(g, b) >= revenue(g, t) / 2, (g, t.newick()))
    return rep


def matching_best_uncut(n: int) -> int:
    """Largest uncut weight of a unit matching on n points: n/2, or n/2 - 1 when n = 2 mod 4."""
    return n // 2 if n % 4 == 0 else n // 2 - 1


def tightness_ratio(n: int) -> Fraction:
    """Best bisection revenue over OPT on the n-point matching, closed form."""
    return Fraction((n // 2) * matching_best_uncut(n), (n // 2) * (n - 2))


def tightness(n_values=(8, 12, 16, 20), oracle_n_max: int = 12) -> SuiteReport:
    rep = SuiteReport("tightness")
    ratios = []
    for n in n_values:
        g = gen_matching(n)
        u = mub_exact(g).uncut_weight(g)
        rep.check("mub_exact uncut = u(n)", u == matching_best_uncut(n), (n, u))
        opt_closed = Fraction(n // 2 * (n - 2))
        if n <= oracle_n_max:
            opt = opt_tree_bruteforce(g).optimum if n <= 8 else opt_tree_dp(g).optimum
            rep.check("OPT = (n/2)(n-2)", opt == opt_closed, (n, opt))
        ratio = Fraction(n, 2) * u / opt_closed
        rep.check("ratio = analytic", ratio == tightness_ratio(n), (n, ratio))
        ratios.append(ratio)
    for a, b in zip(ratios, ratios[1:]):
        rep.check("strictly decreasing", b < a, (a, b))
    rep.check("above 1/2", all(r > Fraction(1, 2) for r in ratios), ratios)
    return rep


def alg_ratio(instances: int = 30, n: int = 10, trials: int = 2000, seed: int = 0,
              target: float = ALG_RATIO_TARGET) -> SuiteReport:
    """Per instance: mean R(ALG)/OPT - 3 SE >= target, exact MUB first cut."""
    rep = SuiteReport("alg-ratio")
    for idx, g in enumerate(random_corpus(instances, [n], seed)):
        opt = opt_tree_dp(g).optimum
        b = mub_exact(g)
        ratios = np.array([
            float(revenue(g, bisect_then_random(g, "exact", s, bisection=b)) / opt)
            for s in trial_seeds(seed + 1000 + idx, trials)
        ])
        mean = float(ratios.mean())
        se = float(ratios.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
        rep.stats.append((idx, mean, se))
        rep.check(f"mean - 3SE >= {target}", mean - 3 * se >= target, (idx, mean, se))
    return rep


SUITES = {
    "lemma-y-expectation": lemma_y_expectation,
    "cut-probability": cut_probability,
    "half-bisection": half_bisection,
    "extraction": extraction,
    "complementarity": complementarity,
    "tightness": tightness,
    "alg-ratio": alg_ratio,
}
