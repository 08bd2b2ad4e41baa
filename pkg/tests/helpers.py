"""Shared fixtures: the two LETTER drawings and random small graphs."""

import math

import numpy as np

from ringged.graph import SYMBOL, VECTOR, GraphCollection, LabeledGraph, constant_cost_model, letter_cost_model
from ringged.edit import induced_edit_cost
from ringged.lsape import iter_feasible
from ringged.rings import build_ring

G_COORDS = [(0.69, 0.27), (1.40, 1.85), (2.55, 0.45), (0.93, 1.37), (2.00, 1.38)]
H_COORDS = [(0.92, 0.32), (1.76, 1.81), (2.30, 0.21), (0.92, 0.85)]
G_EDGES = [(0, 1), (1, 2), (3, 4)]
H_EDGES = [(0, 1), (1, 2), (2, 3)]

LETTER_NODE_COSTS = np.array([
    [0.177, 1.406, 1.208, 0.468, 0.675],
    [1.203, 0.272, 1.403, 0.832, 0.675],
    [1.226, 1.180, 0.260, 1.259, 0.675],
    [0.788, 0.705, 1.346, 0.390, 0.675],
    [1.135, 0.369, 0.906, 0.902, 0.675],
    [0.675, 0.675, 0.675, 0.675, 0.000],
])


def letter_pair():
    G = LabeledGraph.from_edge_list("G", G_COORDS, G_EDGES)
    H = LabeledGraph.from_edge_list("H", H_COORDS, H_EDGES)
    return G, H


def letter_collection():
    return GraphCollection(letter_pair(), VECTOR, SYMBOL)


def path(n, labels=None, gid="path"):
    labels = labels or ["a"] * n
    return LabeledGraph.from_edge_list(gid, labels, [(i, i + 1) for i in range(n - 1)])


def random_graph(rng, n_min=1, n_max=6, p=0.4, alphabet=None, vector=False, edge_alphabet=1, gid="g"):
    """Erdos-Renyi style graph. Symbolic labels from ``alphabet`` symbols, or 2-d vectors."""
    n = int(rng.integers(n_min, n_max + 1))
    if vector:
        nodes = [tuple(np.round(rng.uniform(0, 3, 2), 2)) for _ in range(n)]
    else:
        k = alphabet or 1
        nodes = [str(int(x)) for x in rng.integers(1, k + 1, n)]
    edges = [(i, j, str(int(rng.integers(1, edge_alphabet + 1))))
             for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return LabeledGraph.from_edge_list(gid, nodes, edges)


def random_pair(rng, n_max=6, symmetric=False):
    """A random graph pair together with a fitting cost model.

    Picks unlabeled, symbol-labeled or vector-labeled pairs at random.
    """
    style = int(rng.integers(0, 3))
    if style == 2:
        G = random_graph(rng, n_max=n_max, vector=True, gid="G")
        H = random_graph(rng, n_max=n_max, vector=True, gid="H")
        return G, H, letter_cost_model()
    alphabet = 1 if style == 0 else 3
    G = random_graph(rng, n_max=n_max, alphabet=alphabet, edge_alphabet=1 + style, gid="G")
    H = random_graph(rng, n_max=n_max, alphabet=alphabet, edge_alphabet=1 + style, gid="H")
    consts = np.round(rng.uniform(0.5, 3.0, 6), 2)
    if symmetric:
        consts[2], consts[5] = consts[1], consts[4]
    return G, H, constant_cost_model(*consts)


def brute_force_ged(G, H, costs):
    """Minimum induced edit cost over every node map."""
    return min(induced_edit_cost(G, H, pi, costs) for pi in iter_feasible(G.num_nodes, H.num_nodes))


def check_ring(G, u, L):
    """Every structural property a ring of size L rooted at u must have."""
    ring = build_ring(G, u, L)
    assert ring.size == L
    dist = G.bfs_distances(u)
    ecc = max(d for d in dist if d != math.inf)
    nodes_seen, edges_seen = set(), set()
    for l, layer in enumerate(ring.layers):
        assert not nodes_seen & set(layer.nodes)
        assert not edges_seen & set(layer.outer_edges) and not edges_seen & set(layer.inner_edges)
        assert not set(layer.outer_edges) & set(layer.inner_edges)
        nodes_seen |= set(layer.nodes)
        edges_seen |= set(layer.outer_edges) | set(layer.inner_edges)
        assert set(layer.nodes) == {x for x in range(G.num_nodes) if dist[x] == l}
        assert (len(layer.nodes) == 0) == (l > ecc)
        for a, b in layer.inner_edges:
            assert dist[a] == dist[b] == l
        for a, b in layer.outer_edges:
            assert sorted((dist[a], dist[b])) == [l, l + 1]
    assert ring[0].nodes == (u,) and ring[0].inner_edges == ()
    covers = nodes_seen == set(range(G.num_nodes)) and edges_seen == set(G.edges)
    connected = all(d != math.inf for d in dist)
    if connected:
        assert covers == (L > ecc)
    return ring
