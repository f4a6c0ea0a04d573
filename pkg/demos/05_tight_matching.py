"""
Where bisections fall short
===========================

On a perfect matching the optimum separates every pair at the bottom, while
any bisection earns only n/2 per uncut pair. The ratio drifts down toward 1/2.
"""

from hcrevenue import bisection_revenue, gen_matching, mub_exact, opt_tree_dp
from hcrevenue.verify import tightness_ratio

for n in (4, 8, 12, 16, 20):
    g = gen_matching(n)
    best = bisection_revenue(g, mub_exact(g))
    opt = opt_tree_dp(g).optimum if n <= 12 else n // 2 * (n - 2)
    print(f"n={n:2d}: best bisection {best}, OPT {opt}, ratio {best / opt} (closed form {tightness_ratio(n)})")
