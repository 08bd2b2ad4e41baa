"""
What a ring looks like
======================

A ring rooted at a node splits the graph into BFS layers. Each layer keeps
its nodes, the edges inside it and the edges going one layer further out.
"""

from ringged import LabeledGraph, build_ring, constant_cost_model, ring_distance

# a triangle with a tail
g = LabeledGraph.from_edge_list("g", "abcde", [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])

for L in (1, 2, 4):
    ring = build_ring(g, 0, L)
    print(f"L={L}")
    for l, layer in enumerate(ring.layers):
        print(f"  layer {l}: nodes {layer.nodes} outer {layer.outer_edges} inner {layer.inner_edges}")

# size 1 is the classic branch: root plus incident edges
print(build_ring(g, 2, 1)[0])

# Ring distance: alpha weighs (nodes, inner, outer) inside a layer, lambda weighs layers.
h = LabeledGraph.from_edge_list("h", "abcd", [(0, 1), (1, 2), (2, 3)])
c = constant_cost_model()
rg, rh = build_ring(g, 0, 3), build_ring(h, 0, 3)
for kind in ("lsape_optimal", "lsape_greedy", "multiset"):
    d = ring_distance(g, h, rg, rh, (1 / 3, 1 / 3, 1 / 3), (0.5, 0.3, 0.2), kind, c)
    print(f"{kind:14s} {d:.4f}")
