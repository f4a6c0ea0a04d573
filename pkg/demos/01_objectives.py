"""
Revenue and cost of an HC tree
==============================

Build a small similarity graph, score a few trees under both objectives,
and confirm they always add up to n times the total weight.
"""

from hcrevenue import (HcTree, SimilarityGraph, dasgupta_cost, parse_newick,
                       revenue, total_weight)

# a star centred on point 1 with weights 3, 2, 1
g = SimilarityGraph(4, [(1, 2, 3), (1, 3, 2), (1, 4, 1)])

comb = HcTree((((1, 2), 3), 4))
pairs = parse_newick("((1,2),(3,4));")
print("comb :", comb.newick(), "revenue", revenue(g, comb), "cost", dasgupta_cost(g, comb))
print("pairs:", pairs.newick(), "revenue", revenue(g, pairs), "cost", dasgupta_cost(g, pairs))

# heavier edges should be separated low in the tree: the comb does exactly that
for t in (comb, pairs):
    print(t.newick(), "R + C =", revenue(g, t) + dasgupta_cost(g, t), "= n W =", g.n * total_weight(g))

# per-edge view: |T_e| is the size of the smallest cluster holding both endpoints
for i, j, w in g.edges:
    print(f"edge ({i},{j}) w={w}: |T_e| in comb = {comb.lca_size(i, j)}")
