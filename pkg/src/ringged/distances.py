"""Node/edge set distances, layer distances and ring distances."""

from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import Sequence

import numpy as np

from .graph import CostModel, LabeledGraph
from .lsape import greedy_cost, optimal_cost
from .rings import Layer, Ring


class SetDistanceKind(str, Enum):
    LSAPE_OPTIMAL = "lsape_optimal"
    LSAPE_GREEDY = "lsape_greedy"
    MULTISET = "multiset"


def check_simplex(w, name: str = "weights", tol: float = 1e-9) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError(f"{name} must be a non-empty vector")
    if np.any(w < -tol) or abs(w.sum() - 1.0) > 1e-6:
        raise ValueError(f"{name} must be non-negative and sum to 1, got {w.tolist()}")
    return np.clip(w, 0.0, None)


def _multiset_distance(left: Sequence, right: Sequence, sub, dele, ins) -> float:
    n, m = len(left), len(right)
    c_del = float(np.mean([dele(a) for a in left])) if n else 0.0
    c_ins = float(np.mean([ins(b) for b in right])) if m else 0.0
    diff = [sub(a, b) for a in left for b in right if a != b]
    c_sub = float(np.mean(diff)) if diff else 0.0
    common = sum((Counter(left) & Counter(right)).values())
    d = 0.0
    if n > m:
        d += c_del * (n - m)
    elif m > n:
        d += c_ins * (m - n)
    return d + c_sub * (min(n, m) - common)


class SetDistance:
    """Set distances over label sequences for one cost model and kind.

    Results depend only on the label multisets (or, for the greedy kind, the
    ordered label sequences), so they are memoized on those keys.
    """

    def __init__(self, costs: CostModel, kind=SetDistanceKind.LSAPE_OPTIMAL):
        self.costs = costs
        self.kind = SetDistanceKind(kind)
        self._cache = {}  # canonical label keys
        self._raw = {}    # keys as passed in, to skip sorting on repeats

    def _key(self, labels):
        labels = tuple(labels)
        return labels if self.kind is SetDistanceKind.LSAPE_GREEDY else tuple(sorted(labels))

    def _compute(self, what: str, left: tuple, right: tuple) -> float:
        c = self.costs
        if what == "node":
            sub, dele, ins, matrix = c.node_sub, c.node_del, c.node_ins, c.node_matrix
        else:
            sub, dele, ins, matrix = c.edge_sub, c.edge_del, c.edge_ins, c.edge_matrix
        if not left:
            return float(sum(ins(b) for b in right))
        if not right:
            return float(sum(dele(a) for a in left))
        if self.kind is SetDistanceKind.MULTISET:
            return _multiset_distance(left, right, sub, dele, ins)
        C = matrix(left, right)
        if self.kind is SetDistanceKind.LSAPE_GREEDY:
            return greedy_cost(C)
        return optimal_cost(C)

    def _get(self, what, left, right):
        raw = (what, tuple(left), tuple(right))
        d = self._raw.get(raw)
        if d is not None:
            return d
        key = (what, self._key(left), self._key(right))
        d = self._cache.get(key)
        if d is None:
            d = self._compute(what, key[1], key[2])
            self._cache[key] = d
        self._raw[raw] = d
        return d

    def nodes(self, left: Sequence, right: Sequence) -> float:
        return self._get("node", left, right)

    def edges(self, left: Sequence, right: Sequence) -> float:
        return self._get("edge", left, right)


def _node_labels(G: LabeledGraph, nodes) -> tuple:
    return tuple(G.nodes[u] for u in nodes)


def _edge_labels(G: LabeledGraph, edges) -> tuple:
    return tuple(G.edges[e] for e in edges)


def node_set_distance_lsape(G, H, nodes_g, nodes_h, costs, greedy: bool = False) -> float:
    kind = SetDistanceKind.LSAPE_GREEDY if greedy else SetDistanceKind.LSAPE_OPTIMAL
    return SetDistance(costs, kind).nodes(_node_labels(G, sorted(nodes_g)), _node_labels(H, sorted(nodes_h)))


def edge_set_distance_lsape(G, H, edges_g, edges_h, costs, greedy: bool = False) -> float:
    kind = SetDistanceKind.LSAPE_GREEDY if greedy else SetDistanceKind.LSAPE_OPTIMAL
    return SetDistance(costs, kind).edges(_edge_labels(G, sorted(edges_g)), _edge_labels(H, sorted(edges_h)))


def node_set_distance_multiset(G, H, nodes_g, nodes_h, costs) -> float:
    return SetDistance(costs, SetDistanceKind.MULTISET).nodes(_node_labels(G, nodes_g), _node_labels(H, nodes_h))


def edge_set_distance_multiset(G, H, edges_g, edges_h, costs) -> float:
    return SetDistance(costs, SetDistanceKind.MULTISET).edges(_edge_labels(G, edges_g), _edge_labels(H, edges_h))


# --------------------------------------------------------------------------
# Layers and rings

class RingLabels:
    """Label sequences of every layer of a ring, extracted once."""

    __slots__ = ("nodes", "inner", "outer")

    def __init__(self, graph: LabeledGraph, ring: Ring):
        self.nodes = [_node_labels(graph, lay.nodes) for lay in ring.layers]
        self.inner = [_edge_labels(graph, lay.inner_edges) for lay in ring.layers]
        self.outer = [_edge_labels(graph, lay.outer_edges) for lay in ring.layers]


def layer_components(lg: RingLabels, lh: RingLabels, l: int, dist: SetDistance) -> tuple:
    """Raw ``(d_nodes, d_inner, d_outer)`` and the three normalizers at level ``l``."""
    a, b = lg.nodes[l], lh.nodes[l]
    ia, ib = lg.inner[l], lh.inner[l]
    oa, ob = lg.outer[l], lh.outer[l]
    raw = (dist.nodes(a, b), dist.edges(ia, ib), dist.edges(oa, ob))
    norm = (max(len(a), len(b), 1), max(len(ia), len(ib), 1), max(len(oa), len(ob), 1))
    return raw, norm


def ring_components(lg: RingLabels, lh: RingLabels, dist: SetDistance, levels=None) -> np.ndarray:
    """Normalized layer components, shape ``(L, 3)`` ordered (nodes, inner, outer)."""
    L = len(lg.nodes)
    out = np.zeros((L, 3))
    for l in (range(L) if levels is None else levels):
        raw, norm = layer_components(lg, lh, l, dist)
        out[l] = np.divide(raw, norm)
    return out


def _layer_to_ring_labels(G: LabeledGraph, layer: Layer) -> RingLabels:
    return RingLabels(G, Ring(None, (layer,)))


def layer_distance(G: LabeledGraph, H: LabeledGraph, layer_g: Layer, layer_h: Layer, alpha,
                   kind, costs: CostModel) -> float:
    alpha = check_simplex(alpha, "alpha")
    if alpha.size != 3:
        raise ValueError("alpha must have three entries")
    comps = ring_components(_layer_to_ring_labels(G, layer_g), _layer_to_ring_labels(H, layer_h),
                            SetDistance(costs, kind))
    return float(comps[0] @ alpha)


def ring_distance(G: LabeledGraph, H: LabeledGraph, ring_g: Ring, ring_h: Ring, alpha, lam,
                  kind, costs: CostModel, dist: SetDistance = None) -> float:
    """Weighted sum over levels of layer distances."""
    alpha = check_simplex(alpha, "alpha")
    lam = check_simplex(lam, "lambda")
    if ring_g.size != ring_h.size or ring_g.size != lam.size:
        raise ValueError(f"ring sizes {ring_g.size}/{ring_h.size} do not match {lam.size} level weights")
    dist = dist or SetDistance(costs, kind)
    levels = [l for l in range(lam.size) if lam[l] > 0]
    comps = ring_components(RingLabels(G, ring_g), RingLabels(H, ring_h), dist, levels)
    return float(lam @ comps @ alpha)
