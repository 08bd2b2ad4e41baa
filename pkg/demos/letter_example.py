"""
Bounding GED on two drawn letters
=================================

Two small letter drawings, node labels are 2-d coordinates. Node costs are
Euclidean distances (scaled), deletions and insertions are constant.
"""

import numpy as np

from ringged import (HeuristicConfig, LabeledGraph, exact_ged, letter_cost_model, node_label_distance,
                     populate_instance_classical, solve_optimal, upper_bound)

G = LabeledGraph.from_edge_list(
    "G", [(0.69, 0.27), (1.40, 1.85), (2.55, 0.45), (0.93, 1.37), (2.00, 1.38)], [(0, 1), (1, 2), (3, 4)])
H = LabeledGraph.from_edge_list(
    "H", [(0.92, 0.32), (1.76, 1.81), (2.30, 0.21), (0.92, 0.85)], [(0, 1), (1, 2), (2, 3)])
costs = letter_cost_model()

# The simplest instance only looks at node labels.
# Last row and column hold insertion and deletion costs.
C = populate_instance_classical(G, H, node_label_distance(G, H, costs))
np.set_printoptions(precision=3, suppress=True)
print(C.costs)

pi, cost = solve_optimal(C)
print("assignment rows:", pi.rows, " LSAPE cost:", round(cost, 3))

# Every node map induces an edit path, so its cost bounds GED from above.
for method in ("node_only", "branch_like", "ring_opt", "ring_ms"):
    res = upper_bound(G, H, HeuristicConfig(method, L=2), costs)
    print(f"{method:12s} bound {res.bound:.4f}")

print("exact GED   ", round(exact_ged(G, H, costs)[0], 4))
