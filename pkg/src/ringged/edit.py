"""Node maps and the edit cost they induce."""

from __future__ import annotations

from typing import Sequence

from .graph import CostModel, LabeledGraph
from .lsape import EPS, Assignment

# A node map between G and H is an Assignment with n = |V^G| rows and m = |V^H| columns.
NodeMap = Assignment


def check_node_map(G: LabeledGraph, H: LabeledGraph, pi: NodeMap) -> None:
    if pi.n != G.num_nodes or pi.m != H.num_nodes:
        raise ValueError(
            f"node map of shape ({pi.n},{pi.m}) is invalid for graphs with "
            f"{G.num_nodes} and {H.num_nodes} nodes")


def node_edit_cost(G: LabeledGraph, H: LabeledGraph, pi: NodeMap, costs: CostModel) -> float:
    total = 0.0
    for u, v in enumerate(pi.rows):
        total += costs.node(G.nodes[u], None if v == EPS else H.nodes[v])
    for v, u in enumerate(pi.cols):
        if u == EPS:
            total += costs.node_ins(H.nodes[v])
    return total


def edge_edit_cost(G: LabeledGraph, H: LabeledGraph, pi: NodeMap, costs: CostModel) -> float:
    total = 0.0
    rows, cols = pi.rows, pi.cols
    for (a, b), lab in G.edges.items():
        va, vb = rows[a], rows[b]
        if va != EPS and vb != EPS and H.has_edge(va, vb):
            total += costs.edge_sub(lab, H.edge_label(va, vb))
        else:
            total += costs.edge_del(lab)
    for (c, d), lab in H.edges.items():
        uc, ud = cols[c], cols[d]
        if uc == EPS or ud == EPS or not G.has_edge(uc, ud):
            total += costs.edge_ins(lab)
    return total


def induced_edit_cost(G: LabeledGraph, H: LabeledGraph, pi: NodeMap, costs: CostModel) -> float:
    """Cost of the edit path induced by ``pi``; an upper bound for GED(G, H)."""
    check_node_map(G, H, pi)
    return node_edit_cost(G, H, pi, costs) + edge_edit_cost(G, H, pi, costs)


def upper_bound_from_solutions(G: LabeledGraph, H: LabeledGraph, solutions: Sequence[NodeMap],
                               costs: CostModel) -> tuple:
    """Smallest induced edit cost over ``solutions`` and the first map attaining it."""
    if not solutions:
        raise ValueError("need at least one node map")
    best, best_map = None, None
    for pi in solutions:
        c = induced_edit_cost(G, H, pi, costs)
        if best is None or c < best:
            best, best_map = c, pi
    return best, best_map
