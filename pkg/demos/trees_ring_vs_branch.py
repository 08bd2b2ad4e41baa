"""
Rings versus branches on unlabeled trees
========================================

When labels carry no information, all that is left is topology. Rings see
further than branches, so their bounds should be tighter there. Adding
labels narrows the difference.
"""

import numpy as np

from ringged import HeuristicConfig, constant_cost_model, generate_trees, upper_bound

costs = constant_cost_model()

for k in (1, 10):
    trees = generate_trees((8, 12), k, 15, seed=0).graphs
    row = []
    for method in ("branch_like", "ring_opt", "ring_ms"):
        cfg = HeuristicConfig(method, L=3, num_solutions=10)
        b = [upper_bound(G, H, cfg, costs).bound for G in trees for H in trees if G is not H]
        row.append(f"{method} {np.mean(b):.3f}")
    print(f"k={k:2d}: " + ", ".join(row))
