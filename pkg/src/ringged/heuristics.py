"""Upper bounds for GED through LSAPE instances built from local structures."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .distances import RingLabels, SetDistance, SetDistanceKind, check_simplex, ring_components
from .edit import NodeMap, upper_bound_from_solutions
from .graph import CostModel, LabeledGraph
from .lsape import LsapeInstance, enumerate_optimal, solve_greedy
from .rings import build_all_rings, empty_ring

METHODS = ("ring_opt", "ring_gd", "ring_ms", "ring_ml", "branch_like", "node_only")
RING_KINDS = {
    "ring_opt": SetDistanceKind.LSAPE_OPTIMAL,
    "ring_gd": SetDistanceKind.LSAPE_GREEDY,
    "ring_ms": SetDistanceKind.MULTISET,
}


@dataclass(frozen=True)
class HeuristicConfig:
    method: str = "ring_opt"
    L: int = 3
    alpha: tuple = (1 / 3, 1 / 3, 1 / 3)
    lam: Optional[tuple] = None  # uniform over L levels when omitted
    num_solutions: int = 1
    greedy_final_solve: bool = False
    ml_kind: SetDistanceKind = SetDistanceKind.LSAPE_OPTIMAL

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.L < 1:
            raise ValueError(f"L must be >= 1, got {self.L}")
        if self.num_solutions < 1:
            raise ValueError("num_solutions must be >= 1")
        alpha = check_simplex(self.alpha, "alpha")
        if alpha.size != 3:
            raise ValueError("alpha must have three entries")
        object.__setattr__(self, "alpha", tuple(alpha))
        lam = np.full(self.L, 1.0 / self.L) if self.lam is None else check_simplex(self.lam, "lambda")
        if lam.size != self.L:
            raise ValueError(f"lambda has {lam.size} entries but L = {self.L}")
        object.__setattr__(self, "lam", tuple(lam))
        object.__setattr__(self, "ml_kind", SetDistanceKind(self.ml_kind))

    @property
    def set_distance_kind(self) -> SetDistanceKind:
        return RING_KINDS.get(self.method, self.ml_kind)


@dataclass
class UpperBound:
    bound: float
    node_map: NodeMap
    seconds: float
    instance: Optional[LsapeInstance] = field(default=None, repr=False)


def populate_instance_classical(G: LabeledGraph, H: LabeledGraph,
                                distance: Callable[[Optional[int], Optional[int]], float]) -> LsapeInstance:
    """LSAPE instance with ``c[i, k] = distance(u_i, v_k)``; ``None`` is the dummy node."""
    n, m = G.num_nodes, H.num_nodes
    C = np.zeros((n + 1, m + 1))
    for i in range(n):
        for k in range(m):
            C[i, k] = distance(i, k)
        C[i, m] = distance(i, None)
    for k in range(m):
        C[n, k] = distance(None, k)
    return LsapeInstance(C)


def node_label_distance(G: LabeledGraph, H: LabeledGraph, costs: CostModel):
    """Local structure distance that only compares node labels."""
    def d(u, v):
        return costs.node(None if u is None else G.nodes[u], None if v is None else H.nodes[v])
    return d


def branch_like_distance(G: LabeledGraph, H: LabeledGraph, u: Optional[int], v: Optional[int],
                         costs: CostModel, dist: Optional[SetDistance] = None) -> float:
    """Node cost plus half the optimal LSAPE distance between incident edge label sets."""
    dist = dist or SetDistance(costs, SetDistanceKind.LSAPE_OPTIMAL)
    lu = None if u is None else G.nodes[u]
    lv = None if v is None else H.nodes[v]
    eg = () if u is None else tuple(G.edges[e] for e in G.incident_edges(u))
    eh = () if v is None else tuple(H.edges[e] for e in H.incident_edges(v))
    return costs.node(lu, lv) + 0.5 * dist.edges(eg, eh)


def ring_labels(G: LabeledGraph, L: int) -> list:
    """Per-node ring label profiles; the last entry belongs to the dummy node."""
    rings, _ = build_all_rings(G, L) if G.num_nodes else ([], 0)
    return [RingLabels(G, r) for r in rings] + [RingLabels(G, empty_ring(L))]


def ring_component_tensor(G: LabeledGraph, H: LabeledGraph, L: int, dist: SetDistance,
                          profiles=None, levels=None) -> np.ndarray:
    """Normalized layer components for every cell, shape ``(n+1, m+1, L, 3)``.

    The ring instance for weights ``alpha, lam`` is the contraction
    ``T @ alpha`` weighted by ``lam`` over levels. The corner cell stays 0.
    """
    pg, ph = profiles if profiles is not None else (ring_labels(G, L), ring_labels(H, L))
    n, m = G.num_nodes, H.num_nodes
    T = np.zeros((n + 1, m + 1, L, 3))
    for i in range(n + 1):
        for k in range(m + 1):
            if i == n and k == m:
                continue
            T[i, k] = ring_components(pg[i], ph[k], dist, levels)
    return T


def ring_instance_from_tensor(T: np.ndarray, alpha, lam) -> LsapeInstance:
    C = np.einsum("iklc,l,c->ik", T, np.asarray(lam, float), np.asarray(alpha, float))
    C[-1, -1] = 0.0
    return LsapeInstance(C)


def populate_ring_instance(G, H, config: HeuristicConfig, costs: CostModel,
                           dist: Optional[SetDistance] = None, profiles=None) -> LsapeInstance:
    dist = dist or SetDistance(costs, config.set_distance_kind)
    levels = [l for l, w in enumerate(config.lam) if w > 0]
    T = ring_component_tensor(G, H, config.L, dist, profiles, levels)
    return ring_instance_from_tensor(T, config.alpha, config.lam)


def solve_and_bound(G, H, C: LsapeInstance, costs: CostModel, num_solutions: int = 1,
                    greedy: bool = False) -> tuple:
    if greedy:
        solutions = [solve_greedy(C)[0]]
    else:
        solutions = enumerate_optimal(C, num_solutions)
    return upper_bound_from_solutions(G, H, solutions, costs)


def upper_bound(G: LabeledGraph, H: LabeledGraph, config: HeuristicConfig, costs: CostModel,
                model=None, dist: Optional[SetDistance] = None, profiles=None) -> UpperBound:
    """Run one LSAPE-based heuristic and return the induced upper bound.

    ``dist`` (a shared set-distance cache) and ``profiles`` (precomputed ring
    label profiles of ``G`` and ``H``) are optional accelerators for batch use.
    """
    t0 = time.perf_counter()
    method = config.method
    if method == "node_only":
        C = populate_instance_classical(G, H, node_label_distance(G, H, costs))
    elif method == "branch_like":
        d = dist if dist is not None and dist.kind is SetDistanceKind.LSAPE_OPTIMAL \
            else SetDistance(costs, SetDistanceKind.LSAPE_OPTIMAL)
        C = populate_instance_classical(G, H, lambda u, v: branch_like_distance(G, H, u, v, costs, d))
    elif method == "ring_ml":
        if model is None:
            raise ValueError("method ring_ml needs a trained model")
        from .ml import populate_instance_ml
        C = populate_instance_ml(G, H, model, costs, dist=dist, profiles=profiles)
    else:
        C = populate_ring_instance(G, H, config, costs, dist, profiles)
    bound, pi = solve_and_bound(G, H, C, costs, config.num_solutions, config.greedy_final_solve)
    return UpperBound(bound, pi, time.perf_counter() - t0, C)
