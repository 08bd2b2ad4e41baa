"""Feature vectors for node assignments, a one-class SVM and the likelihood-based LSAPE instance."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distances import RingLabels, SetDistance, SetDistanceKind
from .edit import NodeMap
from .exact import DEFAULT_MAX_NODES, exact_ged
from .graph import CostModel, GraphCollection, LabeledGraph
from .heuristics import HeuristicConfig, ring_labels, upper_bound
from .lsape import EPS, LsapeInstance

NUM_GLOBAL = 10
PER_LAYER = 6


def feature_dim(L: int) -> int:
    return PER_LAYER * L + NUM_GLOBAL


def _mean(xs) -> float:
    xs = list(xs)
    return float(np.mean(xs)) if xs else 0.0


def global_features(G: LabeledGraph, H: LabeledGraph, costs: CostModel) -> np.ndarray:
    """Sizes of both graphs and average deletion, insertion and substitution costs."""
    ge, he = list(G.edges.values()), list(H.edges.values())
    return np.array([
        G.num_nodes, H.num_nodes, G.num_edges, H.num_edges,
        _mean(costs.node_del(a) for a in G.nodes),
        _mean(costs.edge_del(a) for a in ge),
        _mean(costs.node_ins(b) for b in H.nodes),
        _mean(costs.edge_ins(b) for b in he),
        _mean(costs.node_sub(a, b) for a in G.nodes for b in H.nodes),
        _mean(costs.edge_sub(a, b) for a in ge for b in he),
    ], dtype=float)


def layer_features(lg: RingLabels, lh: RingLabels, dist: SetDistance) -> np.ndarray:
    """Per level: size differences of N, OE, IE followed by their set distances."""
    L = len(lg.nodes)
    out = np.empty((L, PER_LAYER))
    for l in range(L):
        a, b = lg.nodes[l], lh.nodes[l]
        oa, ob = lg.outer[l], lh.outer[l]
        ia, ib = lg.inner[l], lh.inner[l]
        out[l] = (len(a) - len(b), len(oa) - len(ob), len(ia) - len(ib),
                  dist.nodes(a, b), dist.edges(oa, ob), dist.edges(ia, ib))
    return out.ravel()


def extract_features(G: LabeledGraph, H: LabeledGraph, u: Optional[int], v: Optional[int], L: int,
                     costs: CostModel, kind=SetDistanceKind.LSAPE_OPTIMAL, *, dist=None,
                     profiles=None, glob=None) -> np.ndarray:
    """Feature vector of the assignment ``(u, v)``; ``None`` stands for the dummy node."""
    if u is None and v is None:
        raise ValueError("the dummy-to-dummy assignment has no features")
    dist = dist or SetDistance(costs, kind)
    pg, ph = profiles if profiles is not None else (ring_labels(G, L), ring_labels(H, L))
    glob = global_features(G, H, costs) if glob is None else glob
    lg = pg[-1 if u is None else u]
    lh = ph[-1 if v is None else v]
    return np.concatenate([glob, layer_features(lg, lh, dist)])


def all_features(G, H, L, costs, kind=SetDistanceKind.LSAPE_OPTIMAL, dist=None, profiles=None):
    """Features of every cell except the corner, shape ``(n+1, m+1, d)``; the corner row is zeros."""
    dist = dist or SetDistance(costs, kind)
    pg, ph = profiles if profiles is not None else (ring_labels(G, L), ring_labels(H, L))
    glob = global_features(G, H, costs)
    n, m = G.num_nodes, H.num_nodes
    X = np.zeros((n + 1, m + 1, feature_dim(L)))
    for i in range(n + 1):
        for k in range(m + 1):
            if i == n and k == m:
                continue
            X[i, k, :NUM_GLOBAL] = glob
            X[i, k, NUM_GLOBAL:] = layer_features(pg[i], ph[k], dist)
    return X


# --------------------------------------------------------------------------
# One-class SVM

@dataclass(frozen=True)
class OneClassSvmModel:
    support_vectors: np.ndarray   # (k, d)
    duals: np.ndarray             # (k,)
    gamma: float
    nu: float = 0.5
    L: Optional[int] = None
    kind: SetDistanceKind = SetDistanceKind.LSAPE_OPTIMAL
    # density=True evaluates the Gaussian mixture density; False drops the (gamma/pi)^(d/2) factor
    density: bool = True

    def __post_init__(self):
        sv = np.atleast_2d(np.asarray(self.support_vectors, dtype=float))
        a = np.asarray(self.duals, dtype=float).ravel()
        if sv.shape[0] != a.size:
            raise ValueError("one dual per support vector required")
        if np.any(a < 0) or a.sum() <= 0:
            raise ValueError("duals must be non-negative with positive sum")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if self.L is not None and sv.shape[1] != feature_dim(self.L):
            raise ValueError(f"support vectors have dimension {sv.shape[1]}, expected {feature_dim(self.L)}")
        object.__setattr__(self, "support_vectors", sv)
        object.__setattr__(self, "duals", a)
        object.__setattr__(self, "kind", SetDistanceKind(self.kind))

    @property
    def dim(self) -> int:
        return self.support_vectors.shape[1]

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma, "dim": self.dim, "nu": self.nu, "L": self.L,
            "kind": self.kind.value, "density": self.density,
            "duals": self.duals.tolist(), "support_vectors": self.support_vectors.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OneClassSvmModel":
        try:
            sv = np.asarray(d["support_vectors"], dtype=float).reshape(len(d["duals"]), int(d["dim"]))
            return cls(sv, np.asarray(d["duals"], float), float(d["gamma"]), float(d.get("nu", 0.5)),
                       d.get("L"), d.get("kind", "lsape_optimal"), bool(d.get("density", True)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed model document: {exc}") from exc


def save_model(model: OneClassSvmModel, path) -> None:
    with open(path, "w") as fh:
        json.dump(model.to_dict(), fh, indent=1)


def load_model(path) -> OneClassSvmModel:
    with open(path) as fh:
        return OneClassSvmModel.from_dict(json.load(fh))


def rbf_kernel(X: np.ndarray, Y: np.ndarray, gamma: float) -> np.ndarray:
    sq = (X * X).sum(1)[:, None] + (Y * Y).sum(1)[None, :] - 2.0 * X @ Y.T
    return np.exp(-gamma * np.maximum(sq, 0.0))


def smo_one_class(K: np.ndarray, nu: float, tol: float = 1e-3, max_iter: int = 100_000) -> tuple:
    """Minimize ``0.5 a^T K a`` s.t. ``0 <= a_i <= 1/(nu n)``, ``sum a = 1``.

    Each step moves mass between the maximally violating pair. Returns the
    duals and the final KKT violation.
    """
    n = K.shape[0]
    C = 1.0 / (nu * n)
    a = np.full(n, 1.0 / n)
    g = K @ a
    viol = math.inf
    for _ in range(max_iter):
        up = a < C - 1e-12
        low = a > 1e-12
        gi = np.where(up, g, np.inf)
        gj = np.where(low, g, -np.inf)
        i, j = int(np.argmin(gi)), int(np.argmax(gj))
        viol = gj[j] - gi[i]
        if viol < tol:
            break
        eta = max(K[i, i] + K[j, j] - 2.0 * K[i, j], 1e-12)
        t = min(viol / eta, C - a[i], a[j])
        a[i] += t
        a[j] -= t
        g += t * (K[:, i] - K[:, j])
    a = np.clip(a, 0.0, C)
    return a / a.sum(), max(viol, 0.0)


def train_one_class_svm(T, nu: float = 0.5, gamma: Optional[float] = None, *, L: Optional[int] = None,
                        kind=SetDistanceKind.LSAPE_OPTIMAL, density: bool = True, tol: float = 1e-3,
                        max_iter: int = 100_000) -> OneClassSvmModel:
    """Train on positive vectors only; ``gamma`` defaults to ``1/d``."""
    X = np.atleast_2d(np.asarray(T, dtype=float))
    if X.size == 0 or X.shape[0] == 0:
        raise ValueError("training set is empty")
    if not 0 < nu <= 1:
        raise ValueError("nu must lie in (0, 1]")
    gamma = 1.0 / X.shape[1] if gamma is None else float(gamma)
    K = rbf_kernel(X, X, gamma)
    a, _ = smo_one_class(K, nu, tol, max_iter)
    keep = a > 0
    return OneClassSvmModel(X[keep], a[keep], gamma, nu, L, kind, density)


def likelihood(model: OneClassSvmModel, x) -> np.ndarray:
    """``p*`` at one vector (scalar result) or at each row of a matrix, clamped to [0, 1]."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != model.dim:
        raise ValueError(f"feature dimension {X.shape[1]} does not match model dimension {model.dim}")
    k = rbf_kernel(X, model.support_vectors, model.gamma) @ model.duals / model.duals.sum()
    if model.density:
        k = k * (model.gamma / math.pi) ** (model.dim / 2)
    p = np.clip(k, 0.0, 1.0)
    return float(p[0]) if single else p


def populate_instance_ml(G: LabeledGraph, H: LabeledGraph, model: OneClassSvmModel, costs: CostModel,
                         kind=None, dist=None, profiles=None) -> LsapeInstance:
    """Cells hold ``1 - p*`` of the assignment's feature vector; the corner is 0."""
    if model.L is None:
        raise ValueError("model does not record its ring size")
    kind = SetDistanceKind(kind or model.kind)
    if dist is None or dist.kind is not kind:
        dist = SetDistance(costs, kind)
    X = all_features(G, H, model.L, costs, kind, dist, profiles)
    n, m, d = X.shape
    C = 1.0 - likelihood(model, X.reshape(-1, d)).reshape(n, m)
    C[-1, -1] = 0.0
    return LsapeInstance(C)


# --------------------------------------------------------------------------
# Training data

def training_pairs(count: int, max_pairs: Optional[int] = None, seed: int = 0) -> list:
    pairs = [(i, j) for i in range(count) for j in range(count)]
    if max_pairs is not None and max_pairs < len(pairs):
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(len(pairs), size=max_pairs, replace=False))
        pairs = [pairs[t] for t in idx]
    return pairs


def generate_training_maps(collection: GraphCollection, costs: CostModel, *,
                           oracle_limit: int = DEFAULT_MAX_NODES, L: int = 3, s: int = 10,
                           max_pairs: Optional[int] = None, seed: int = 0) -> dict:
    """One near-optimal node map per ordered pair ``(i, j)`` of graph indices.

    Pairs small enough for the exact search get an optimal map; the rest get
    the best of ``s`` optimal ring instance solutions.
    """
    graphs = collection.graphs
    if not graphs:
        raise ValueError("collection is empty")
    cfg = HeuristicConfig("ring_opt", L=L, num_solutions=s)
    dist = SetDistance(costs, cfg.set_distance_kind)
    profiles = [ring_labels(g, L) for g in graphs]
    maps = {}
    for i, j in training_pairs(len(graphs), max_pairs, seed):
        G, H = graphs[i], graphs[j]
        if G.num_nodes + H.num_nodes <= oracle_limit:
            _, pi = exact_ged(G, H, costs, max_nodes=oracle_limit)
        else:
            pi = upper_bound(G, H, cfg, costs, dist=dist, profiles=(profiles[i], profiles[j])).node_map
        maps[(i, j)] = pi
    return maps


def training_vectors(collection: GraphCollection, maps: dict, L: int, costs: CostModel,
                     kind=SetDistanceKind.LSAPE_OPTIMAL) -> np.ndarray:
    """Feature vectors of every assignment contained in the given node maps."""
    graphs = collection.graphs
    dist = SetDistance(costs, kind)
    profiles = [ring_labels(g, L) for g in graphs]
    rows = []
    for (i, j), pi in sorted(maps.items()):
        G, H = graphs[i], graphs[j]
        pr = (profiles[i], profiles[j])
        glob = global_features(G, H, costs)
        for u, v in _assignments(pi):
            rows.append(extract_features(G, H, u, v, L, costs, kind, dist=dist, profiles=pr, glob=glob))
    return np.array(rows).reshape(-1, feature_dim(L))


def _assignments(pi: NodeMap):
    for u, v in enumerate(pi.rows):
        yield u, (None if v == EPS else v)
    for v, u in enumerate(pi.cols):
        if u == EPS:
            yield None, v
