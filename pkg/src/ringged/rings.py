"""Rings: per-node sequences of BFS layers.

Layer ``l`` of the ring rooted at ``u`` holds the nodes at hop distance ``l``
from ``u``, the inner edges joining two of them, and the outer edges leading
to layer ``l + 1``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import LabeledGraph, normalize_edge


@dataclass(frozen=True)
class Layer:
    nodes: tuple = ()
    outer_edges: tuple = ()
    inner_edges: tuple = ()

    def is_empty(self) -> bool:
        return not (self.nodes or self.outer_edges or self.inner_edges)


EMPTY_LAYER = Layer()


@dataclass(frozen=True)
class Ring:
    root: Optional[int]
    layers: tuple

    @property
    def size(self) -> int:
        return len(self.layers)

    def __getitem__(self, l: int) -> Layer:
        return self.layers[l]


def empty_ring(L: int) -> Ring:
    """The ring of the dummy node: ``L`` empty layers."""
    return Ring(None, (EMPTY_LAYER,) * L)


def _make_layer(nodes, oe, ie) -> Layer:
    return Layer(tuple(sorted(nodes)), tuple(sorted(oe)), tuple(sorted(ie)))


def build_ring(G: LabeledGraph, u: Optional[int], L: int) -> Ring:
    """Ring of size ``L`` rooted at ``u`` (``None`` for the dummy node), built by BFS.

    Nodes at distance ``L`` or more are never enqueued, but the edges reaching
    them from the last layer are kept as its outer edges, so a ring of size 1
    is the root together with its incident edges. Runs in ``O(|V| + |E|)``.
    """
    if L < 1:
        raise ValueError(f"ring size must be >= 1, got {L}")
    if u is None:
        return empty_ring(L)
    if not 0 <= u < G.num_nodes:
        raise ValueError(f"node index {u} out of range for graph {G.id!r}")

    dist = [math.inf] * G.num_nodes
    dist[u] = 0
    discovered = set()
    layers = []
    level = 0
    N, OE, IE = [], [], []
    open_ = deque([u])
    while open_:
        x = open_.popleft()
        if dist[x] > level:
            layers.append(_make_layer(N, OE, IE))
            level += 1
            N, OE, IE = [], [], []
        N.append(x)
        for y in G.neighbors(x):
            e = normalize_edge(x, y)
            if e in discovered:
                continue
            discovered.add(e)
            dy = dist[y] if dist[y] != math.inf else dist[x] + 1
            if dist[y] == math.inf and dy < L:
                dist[y] = dy
                open_.append(y)
            if dy == level:
                IE.append(e)
            else:
                OE.append(e)
    layers.append(_make_layer(N, OE, IE))
    layers.extend([EMPTY_LAYER] * (L - len(layers)))
    return Ring(u, tuple(layers))


def build_all_rings(G: LabeledGraph, L: int) -> tuple:
    """Rings for every node of ``G`` and the largest non-empty layer index seen.

    The second value equals ``diam(G)`` whenever ``L > diam(G)`` and ``G`` is
    connected.
    """
    rings = [build_ring(G, u, L) for u in range(G.num_nodes)]
    deepest = 0
    for r in rings:
        for l, layer in enumerate(r.layers):
            if layer.nodes:
                deepest = max(deepest, l)
    return rings, deepest


def diameter(G: LabeledGraph) -> float:
    """Largest finite-or-infinite eccentricity, straight from BFS distances."""
    best = 0
    for u in range(G.num_nodes):
        best = max(best, max(G.bfs_distances(u)))
    return best
