"""Labeled graphs, JSON dataset I/O and edit cost models.

Labels are either symbols (``str``) or real vectors (tuples of floats). Node
indices are 0-based in memory and 1-based in the JSON dataset format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

Label = Union[str, tuple]
Edge = tuple[int, int]

SYMBOL = "symbol"
VECTOR = "vector"
LABEL_KINDS = (SYMBOL, VECTOR)


class GraphFormatError(ValueError):
    """Raised when a dataset or graph violates the expected format."""


def normalize_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


def label_kind(label: Label) -> str:
    return VECTOR if isinstance(label, tuple) else SYMBOL


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected graph with node and edge labels.

    ``edges`` maps normalized ``(min, max)`` index pairs to their labels and is
    kept in sorted order, so iterating it is deterministic.
    """

    id: str
    nodes: tuple
    edges: dict = field(default_factory=dict)
    class_label: Optional[str] = None

    def __post_init__(self):
        n = len(self.nodes)
        clean = {}
        for key, lab in self.edges.items():
            i, j = key
            if i == j:
                raise GraphFormatError(f"graph {self.id!r}: self-loop at node {i + 1}")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"graph {self.id!r}: edge ({i + 1},{j + 1}) has invalid endpoint")
            e = normalize_edge(i, j)
            if e in clean:
                raise GraphFormatError(f"graph {self.id!r}: duplicate edge ({e[0] + 1},{e[1] + 1})")
            clean[e] = lab
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", dict(sorted(clean.items())))
        adj = [[] for _ in range(n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edge_list(cls, id: str, nodes: Sequence[Label], edges: Iterable[tuple],
                       class_label: Optional[str] = None, default_edge_label: Label = "1"):
        """Build a graph from ``(i, j)`` or ``(i, j, label)`` tuples (0-based)."""
        emap = {}
        for e in edges:
            i, j = int(e[0]), int(e[1])
            lab = e[2] if len(e) > 2 else default_edge_label
            key = normalize_edge(i, j)
            if key in emap:
                raise GraphFormatError(f"graph {id!r}: duplicate edge ({key[0] + 1},{key[1] + 1})")
            emap[key] = lab
        return cls(id=id, nodes=tuple(nodes), edges=emap, class_label=class_label)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> tuple:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def has_edge(self, i: int, j: int) -> bool:
        return normalize_edge(i, j) in self.edges

    def edge_label(self, i: int, j: int) -> Label:
        return self.edges[normalize_edge(i, j)]

    def incident_edges(self, u: int) -> list:
        return [normalize_edge(u, w) for w in self._adj[u]]

    def bfs_distances(self, root: int) -> list:
        """Hop distances from ``root``; unreachable nodes get ``math.inf``."""
        dist = [math.inf] * self.num_nodes
        dist[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for y in self._adj[x]:
                    if dist[y] == math.inf:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        return dist


@dataclass(frozen=True)
class GraphCollection:
    graphs: tuple
    node_label_kind: str = SYMBOL
    edge_label_kind: str = SYMBOL

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        for kind in (self.node_label_kind, self.edge_label_kind):
            if kind not in LABEL_KINDS:
                raise GraphFormatError(f"unknown label kind {kind!r}")
        for g in self.graphs:
            _check_kinds(g, self.node_label_kind, self.edge_label_kind)

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i):
        return self.graphs[i]

    @property
    def has_classes(self) -> bool:
        return bool(self.graphs) and all(g.class_label is not None for g in self.graphs)

    def by_id(self, gid: str) -> LabeledGraph:
        for g in self.graphs:
            if g.id == gid:
                return g
        raise KeyError(gid)


def _check_kinds(g: LabeledGraph, node_kind: str, edge_kind: str) -> None:
    dims = set()
    for idx, lab in enumerate(g.nodes):
        if label_kind(lab) != node_kind:
            raise GraphFormatError(f"graph {g.id!r}: node {idx + 1} label kind mismatch, expected {node_kind}")
        if node_kind == VECTOR:
            dims.add(len(lab))
    for (i, j), lab in g.edges.items():
        if label_kind(lab) != edge_kind:
            raise GraphFormatError(
                f"graph {g.id!r}: edge ({i + 1},{j + 1}) label kind mismatch, expected {edge_kind}")
    if len(dims) > 1:
        raise GraphFormatError(f"graph {g.id!r}: node label dimensions differ {sorted(dims)}")


# --------------------------------------------------------------------------
# JSON dataset format

def _parse_label(raw, kind: str, where: str) -> Label:
    if kind == VECTOR:
        if not isinstance(raw, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                                                for x in raw):
            raise GraphFormatError(f"{where}: expected a vector label, got {raw!r}")
        return tuple(float(x) for x in raw)
    if isinstance(raw, (list, dict)) or raw is None:
        raise GraphFormatError(f"{where}: expected a symbol label, got {raw!r}")
    return str(raw)


def _dump_label(lab: Label):
    return list(lab) if isinstance(lab, tuple) else lab


def collection_from_dict(doc: dict) -> GraphCollection:
    try:
        node_kind = doc.get("node_label_kind", SYMBOL)
        edge_kind = doc.get("edge_label_kind", SYMBOL)
        raw_graphs = doc["graphs"]
    except (AttributeError, KeyError) as exc:
        raise GraphFormatError(f"dataset is missing field {exc}") from None
    if node_kind not in LABEL_KINDS or edge_kind not in LABEL_KINDS:
        raise GraphFormatError(f"unknown label kind in ({node_kind!r}, {edge_kind!r})")
    graphs = []
    seen = set()
    for pos, rg in enumerate(raw_graphs):
        gid = str(rg.get("id", pos))
        if gid in seen:
            raise GraphFormatError(f"duplicate graph id {gid!r}")
        seen.add(gid)
        nodes = [_parse_label(lab, node_kind, f"graph {gid!r} node {k + 1}")
                 for k, lab in enumerate(rg.get("nodes", []))]
        n = len(nodes)
        emap = {}
        for raw in rg.get("edges", []):
            if not isinstance(raw, list) or len(raw) not in (2, 3):
                raise GraphFormatError(f"graph {gid!r}: malformed edge {raw!r}")
            i, j = raw[0], raw[1]
            if not (isinstance(i, int) and isinstance(j, int)):
                raise GraphFormatError(f"graph {gid!r}: edge endpoints must be integers, got {raw!r}")
            if i == j:
                raise GraphFormatError(f"graph {gid!r}: self-loop at node {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphFormatError(f"graph {gid!r}: edge ({i},{j}) has invalid endpoint")
            key = normalize_edge(i - 1, j - 1)
            if key in emap:
                raise GraphFormatError(f"graph {gid!r}: duplicate edge ({i},{j})")
            lab = raw[2] if len(raw) == 3 else ("1" if edge_kind == SYMBOL else [1.0])
            emap[key] = _parse_label(lab, edge_kind, f"graph {gid!r} edge ({i},{j})")
        cls = rg.get("class")
        graphs.append(LabeledGraph(id=gid, nodes=tuple(nodes), edges=emap,
                                   class_label=None if cls is None else str(cls)))
    return GraphCollection(graphs=tuple(graphs), node_label_kind=node_kind, edge_label_kind=edge_kind)


def collection_to_dict(coll: GraphCollection) -> dict:
    graphs = []
    for g in coll.graphs:
        entry = {"id": g.id}
        if g.class_label is not None:
            entry["class"] = g.class_label
        entry["nodes"] = [_dump_label(lab) for lab in g.nodes]
        entry["edges"] = [[i + 1, j + 1, _dump_label(lab)] for (i, j), lab in g.edges.items()]
        graphs.append(entry)
    return {"node_label_kind": coll.node_label_kind, "edge_label_kind": coll.edge_label_kind,
            "graphs": graphs}


def load_collection(path) -> GraphCollection:
    """Read and validate a JSON graph dataset."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: parse error: {exc}") from None
    return collection_from_dict(doc)


def save_collection(coll: GraphCollection, path) -> None:
    Path(path).write_text(json.dumps(collection_to_dict(coll), indent=1) + "\n")


# --------------------------------------------------------------------------
# Edit cost models

class CostModel:
    """Edit costs for nodes and edges. ``None`` stands for the dummy label.

    Subclasses implement the six elementary costs. The ``node``/``edge``
    dispatchers and the matrix builders are shared.
    """

    symmetric = True

    def node_sub(self, a: Label, b: Label) -> float:
        raise NotImplementedError

    def node_del(self, a: Label) -> float:
        raise NotImplementedError

    def node_ins(self, b: Label) -> float:
        raise NotImplementedError

    def edge_sub(self, a: Label, b: Label) -> float:
        raise NotImplementedError

    def edge_del(self, a: Label) -> float:
        raise NotImplementedError

    def edge_ins(self, b: Label) -> float:
        raise NotImplementedError

    def node(self, a: Optional[Label], b: Optional[Label]) -> float:
        if a is None and b is None:
            return 0.0
        if a is None:
            return self.node_ins(b)
        if b is None:
            return self.node_del(a)
        return self.node_sub(a, b)

    def edge(self, a: Optional[Label], b: Optional[Label]) -> float:
        if a is None and b is None:
            return 0.0
        if a is None:
            return self.edge_ins(b)
        if b is None:
            return self.edge_del(a)
        return self.edge_sub(a, b)

    def _matrix(self, sub, dele, ins, left: Sequence, right: Sequence) -> np.ndarray:
        n, m = len(left), len(right)
        C = np.zeros((n + 1, m + 1))
        for i, a in enumerate(left):
            for k, b in enumerate(right):
                C[i, k] = sub(a, b)
            C[i, m] = dele(a)
        for k, b in enumerate(right):
            C[n, k] = ins(b)
        return C

    def node_matrix(self, left: Sequence, right: Sequence) -> np.ndarray:
        """LSAPE cost matrix ``(n+1, m+1)`` for two node label sequences."""
        return self._matrix(self.node_sub, self.node_del, self.node_ins, left, right)

    def edge_matrix(self, left: Sequence, right: Sequence) -> np.ndarray:
        return self._matrix(self.edge_sub, self.edge_del, self.edge_ins, left, right)


@dataclass(frozen=True)
class ConstantCostModel(CostModel):
    """Constant costs; substituting equal labels is free."""

    sub_n: float = 1.0
    del_n: float = 1.0
    ins_n: float = 1.0
    sub_e: float = 1.0
    del_e: float = 1.0
    ins_e: float = 1.0

    def __post_init__(self):
        for name in ("sub_n", "del_n", "ins_n", "sub_e", "del_e", "ins_e"):
            v = getattr(self, name)
            if not v >= 0 or math.isinf(v):
                raise ValueError(f"cost constant {name} must be a finite non-negative number, got {v}")

    @property
    def symmetric(self):
        return self.del_n == self.ins_n and self.del_e == self.ins_e

    def node_sub(self, a, b):
        return 0.0 if a == b else float(self.sub_n)

    def node_del(self, a):
        return float(self.del_n)

    def node_ins(self, b):
        return float(self.ins_n)

    def edge_sub(self, a, b):
        return 0.0 if a == b else float(self.sub_e)

    def edge_del(self, a):
        return float(self.del_e)

    def edge_ins(self, b):
        return float(self.ins_e)

    def _const_matrix(self, sub, dele, ins, left, right):
        n, m = len(left), len(right)
        C = np.empty((n + 1, m + 1))
        if n and m:
            C[:n, :m] = [[0.0 if a == b else sub for b in right] for a in left]
        C[:n, m] = dele
        C[n, :m] = ins
        C[n, m] = 0.0
        return C

    def node_matrix(self, left, right):
        return self._const_matrix(self.sub_n, self.del_n, self.ins_n, left, right)

    def edge_matrix(self, left, right):
        return self._const_matrix(self.sub_e, self.del_e, self.ins_e, left, right)


@dataclass(frozen=True)
class LetterCostModel(CostModel):
    """Euclidean node costs on 2-d coordinates, constant unlabeled-edge costs."""

    node_scale: float = 0.75
    node_indel: float = 0.675
    edge_indel: float = 0.425

    def node_sub(self, a, b):
        return self.node_scale * math.dist(a, b)

    def node_del(self, a):
        return self.node_indel

    def node_ins(self, b):
        return self.node_indel

    def edge_sub(self, a, b):
        return 0.0

    def edge_del(self, a):
        return self.edge_indel

    def edge_ins(self, b):
        return self.edge_indel

    def node_matrix(self, left, right):
        n, m = len(left), len(right)
        C = np.empty((n + 1, m + 1))
        if n and m:
            A = np.asarray(left, dtype=float)
            B = np.asarray(right, dtype=float)
            C[:n, :m] = self.node_scale * np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(-1))
        C[:n, m] = self.node_indel
        C[n, :m] = self.node_indel
        C[n, m] = 0.0
        return C


@dataclass(frozen=True)
class FunctionCostModel(CostModel):
    """Cost model from six user callables ``c(label[, label]) -> float``."""

    node_sub_fn: Callable
    node_del_fn: Callable
    node_ins_fn: Callable
    edge_sub_fn: Callable
    edge_del_fn: Callable
    edge_ins_fn: Callable
    symmetric: bool = False

    def node_sub(self, a, b):
        return float(self.node_sub_fn(a, b))

    def node_del(self, a):
        return float(self.node_del_fn(a))

    def node_ins(self, b):
        return float(self.node_ins_fn(b))

    def edge_sub(self, a, b):
        return float(self.edge_sub_fn(a, b))

    def edge_del(self, a):
        return float(self.edge_del_fn(a))

    def edge_ins(self, b):
        return float(self.edge_ins_fn(b))


def letter_cost_model() -> LetterCostModel:
    """Edit costs commonly used for the LETTER dataset."""
    return LetterCostModel()


def constant_cost_model(sub_n=1.0, del_n=1.0, ins_n=1.0, sub_e=1.0, del_e=1.0, ins_e=1.0) -> ConstantCostModel:
    return ConstantCostModel(sub_n, del_n, ins_n, sub_e, del_e, ins_e)


def parse_cost_spec(spec: str) -> CostModel:
    """Parse ``letter`` or ``constant[:sn,dn,in,se,de,ie]`` into a cost model."""
    spec = spec.strip()
    if spec == "letter":
        return letter_cost_model()
    if spec == "constant":
        return constant_cost_model()
    if spec.startswith("constant:"):
        parts = spec.split(":", 1)[1].split(",")
        if len(parts) != 6:
            raise ValueError(f"constant cost spec needs six values, got {len(parts)}")
        return constant_cost_model(*(float(p) for p in parts))
    raise ValueError(f"unknown cost model {spec!r}")
