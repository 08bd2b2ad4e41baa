"""Derivative-free tuning of the ring size and the weights alpha and lambda."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .distances import SetDistance, SetDistanceKind, check_simplex
from .edit import upper_bound_from_solutions
from .graph import CostModel, LabeledGraph
from .heuristics import ring_component_tensor, ring_instance_from_tensor, ring_labels
from .lsape import enumerate_optimal
from .rings import diameter

SUPPORT_TOL = 1e-6


def support(lam, tol: float = SUPPORT_TOL) -> np.ndarray:
    return np.flatnonzero(np.asarray(lam, float) > tol)


def multiplier(lam, L: int, mu: float) -> float:
    """``mu + (1 - mu) (|supp lam| - 1) / max(1, L - 1)``."""
    if not 0 <= mu <= 1:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    return mu + (1 - mu) * (len(support(lam)) - 1) / max(1, L - 1)


class _PairTable:
    """Ring component tensors of training pairs for one ring size, built lazily."""

    def __init__(self, pairs, costs, kind):
        self.pairs = pairs
        self.costs = costs
        self.dist = SetDistance(costs, kind)
        self._tensors = {}

    def tensors(self, L: int) -> list:
        if L not in self._tensors:
            profiles = {}
            for G, H in self.pairs:
                for g in (G, H):
                    if id(g) not in profiles:
                        profiles[id(g)] = ring_labels(g, L)
            self._tensors[L] = [
                ring_component_tensor(G, H, L, self.dist, (profiles[id(G)], profiles[id(H)]))
                for G, H in self.pairs]
        return self._tensors[L]

    def bound_sum(self, alpha, lam, s: int = 1) -> float:
        L = len(lam)
        total = 0.0
        for (G, H), T in zip(self.pairs, self.tensors(L)):
            C = ring_instance_from_tensor(T, alpha, lam)
            total += upper_bound_from_solutions(G, H, enumerate_optimal(C, s), self.costs)[0]
        return total


def objective_f(alpha, lam, L: int, mu: float, pairs: Sequence[tuple], costs: CostModel,
                kind=SetDistanceKind.LSAPE_OPTIMAL, s: int = 1) -> float:
    """Multiplier times the sum of ring bounds over ``pairs`` of graphs, using rings of size ``L``."""
    alpha = check_simplex(alpha, "alpha")
    lam = check_simplex(lam, "lambda")
    if lam.size != L:
        raise ValueError(f"lambda has {lam.size} entries but L = {L}")
    m = multiplier(lam, L, mu)
    if m == 0:
        return 0.0
    return m * _PairTable(list(pairs), costs, kind).bound_sum(alpha, lam, s)


@dataclass
class LearnedParams:
    L: int
    alpha: tuple
    lam: tuple
    objective: float
    initial_L: int
    mu: float
    kind: SetDistanceKind
    evaluations: int = 0
    history: list = field(default_factory=list, repr=False)

    def to_dict(self, **extra) -> dict:
        d = {"L": self.L, "alpha": list(self.alpha), "lambda": list(self.lam),
             "objective": self.objective, "initial_L": self.initial_L, "mu": self.mu,
             "kind": self.kind.value}
        d.update(extra)
        return d


def save_params(params: LearnedParams, path, **extra) -> None:
    with open(path, "w") as fh:
        json.dump(params.to_dict(**extra), fh, indent=1)


def load_params(path) -> dict:
    with open(path) as fh:
        d = json.load(fh)
    for key in ("L", "alpha", "lambda"):
        if key not in d:
            raise ValueError(f"{path}: parameter file lacks {key!r}")
    return d


def _truncate(lam: np.ndarray) -> np.ndarray:
    supp = support(lam)
    top = int(supp.max()) if supp.size else 0
    lam = np.where(lam > SUPPORT_TOL, lam, 0.0)[: top + 1]
    return lam / lam.sum()


def learn_ring_params(graphs: Sequence[LabeledGraph], costs: CostModel,
                      kind=SetDistanceKind.LSAPE_OPTIMAL, mu: float = 1.0, restarts: int = 20,
                      seed: int = 0, s: int = 1, delta0: float = 0.25, delta_min: float = 1e-3,
                      max_evals: Optional[int] = None) -> LearnedParams:
    """Choose ``(L, alpha, lambda)`` minimizing the training objective.

    ``L`` starts at one plus the largest training diameter. Candidates are the
    uniform weights and ``restarts`` Dirichlet samples; the best one is refined
    by moving mass ``delta`` between two coordinates of the same simplex,
    halving ``delta`` whenever no move helps. Each candidate is scored with
    rings of size ``1 + max supp(lambda)``, the size it would be returned with,
    so the reported objective is exactly the one of the returned parameters.
    """
    graphs = list(graphs)
    if not graphs:
        raise ValueError("training set is empty")
    kind = SetDistanceKind(kind)
    diam = max(diameter(g) for g in graphs)
    if math.isinf(diam):
        # disconnected graphs: deepest non-empty layer over all roots
        diam = max((max((d for d in g.bfs_distances(u) if d != math.inf), default=0)
                    for g in graphs for u in range(g.num_nodes)), default=0)
    L0 = 1 + int(diam)
    table = _PairTable([(G, H) for G in graphs for H in graphs], costs, kind)
    rng = np.random.default_rng(seed)
    evals = [0]
    cache = {}

    def score(alpha: np.ndarray, lam: np.ndarray) -> float:
        lt = _truncate(lam)
        key = (tuple(np.round(alpha, 12)), tuple(np.round(lt, 12)))
        if key not in cache:
            evals[0] += 1
            m = multiplier(lam, L0, mu)
            cache[key] = 0.0 if m == 0 else m * table.bound_sum(alpha, lt, s)
        return cache[key]

    candidates = [(np.full(3, 1 / 3), np.full(L0, 1 / L0))]
    candidates += [(rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(L0))) for _ in range(restarts)]
    history = []
    best = None
    for a, l in candidates:
        f = score(a, l)
        history.append(f)
        if best is None or f < best[0]:
            best = (f, a.copy(), l.copy())

    f_best, alpha, lam = best
    delta = delta0
    while delta >= delta_min and f_best > 0:
        if max_evals is not None and evals[0] >= max_evals:
            break
        improved = False
        for block in (0, 1):
            x = alpha if block == 0 else lam
            for a in range(x.size):
                for b in range(x.size):
                    if a == b or x[a] <= 0:
                        continue
                    y = x.copy()
                    t = min(delta, y[a])
                    y[a] -= t
                    y[b] += t
                    y = np.clip(y, 0, None)
                    y /= y.sum()
                    cand = (y, lam) if block == 0 else (alpha, y)
                    f = score(*cand)
                    if f < f_best - 1e-12:
                        f_best, alpha, lam = f, cand[0], cand[1]
                        improved = True
                        break
                if improved:
                    break
            if improved:
                break
        if not improved:
            delta /= 2

    lam_final = _truncate(lam)
    return LearnedParams(L=lam_final.size, alpha=tuple(map(float, alpha)),
                         lam=tuple(map(float, lam_final)), objective=float(f_best), initial_L=L0,
                         mu=mu, kind=kind, evaluations=evals[0], history=history)
