"""Synthetic tree collections and leave-one-out 1-NN evaluation."""

from __future__ import annotations

import csv
import math
from typing import Iterable

import numpy as np

from .graph import SYMBOL, GraphCollection, LabeledGraph

EDGE_LABEL = "1"
TREE_CLASS = "tree"


def prufer_to_edges(seq) -> list:
    """Edges of the labeled tree encoded by a Prüfer sequence (0-based nodes)."""
    n = len(seq) + 2
    degree = np.ones(n, dtype=int)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = int(np.flatnonzero(degree == 1)[0])
        edges.append((leaf, int(x)))
        degree[leaf] -= 1
        degree[x] -= 1
    a, b = np.flatnonzero(degree == 1)
    edges.append((int(a), int(b)))
    return edges


def _adjacency(n: int, edges) -> list:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def tree_centers(n: int, edges) -> list:
    if n <= 2:
        return list(range(n))
    adj = _adjacency(n, edges)
    deg = [len(a) for a in adj]
    leaves = [u for u in range(n) if deg[u] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for u in leaves:
            for w in adj[u]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        leaves = nxt
    return sorted(leaves)


def canonical_form(n: int, edges) -> str:
    """AHU encoding of an unrooted, unlabeled tree: equal strings iff isomorphic."""
    if n == 0:
        return ""
    adj = _adjacency(n, edges)

    def encode(u, parent):
        return "(" + "".join(sorted(encode(w, u) for w in adj[u] if w != parent)) + ")"

    return min(encode(c, -1) for c in tree_centers(n, edges))


def generate_trees(size_range: tuple, alphabet: int, count: int, seed: int = 0,
                   max_attempts: int = 100_000) -> GraphCollection:
    """``count`` pairwise non-isomorphic trees with sizes uniform over ``size_range``.

    Node labels are drawn uniformly from ``"1".."k"``; edges are unlabeled.
    Shapes and labels use separate random streams, so one seed yields the same
    trees for every alphabet size and only the labels differ. Raises
    ``ValueError`` with the achieved count when the size range does not admit
    enough distinct trees within ``max_attempts`` draws.
    """
    lo, hi = size_range
    if count < 1 or alphabet < 1 or lo < 1 or hi < lo:
        raise ValueError("need count >= 1, alphabet >= 1 and 1 <= min size <= max size")
    rng = np.random.default_rng([seed, 0])
    label_rng = np.random.default_rng([seed, 1])
    seen, graphs = set(), []
    attempts = 0
    while len(graphs) < count and attempts < max_attempts:
        attempts += 1
        n = int(rng.integers(lo, hi + 1))
        edges = prufer_to_edges(rng.integers(0, n, size=n - 2)) if n >= 2 else []
        key = canonical_form(n, edges)
        if key in seen:
            continue
        seen.add(key)
        labels = [str(int(x)) for x in label_rng.integers(1, alphabet + 1, size=n)]
        gid = f"t{len(graphs):04d}"
        graphs.append(LabeledGraph.from_edge_list(gid, labels, [(a, b, EDGE_LABEL) for a, b in edges],
                                                  class_label=TREE_CLASS))
    if len(graphs) < count:
        raise ValueError(f"only {len(graphs)} pairwise non-isomorphic trees found for sizes "
                         f"{lo}..{hi}, requested {count}")
    return GraphCollection(graphs, SYMBOL, SYMBOL)


# --------------------------------------------------------------------------
# Bound tables and 1-NN

CSV_HEADER = ("g_id", "h_id", "bound", "seconds")


def write_bounds_csv(path, rows: Iterable[tuple]) -> tuple:
    """Write ``(g_id, h_id, bound, seconds)`` rows plus an ``#avg`` footer; return the averages."""
    rows = list(rows)
    b = float(np.mean([r[2] for r in rows])) if rows else math.nan
    t = float(np.mean([r[3] for r in rows])) if rows else math.nan
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for g, h, bound, sec in rows:
            w.writerow([g, h, repr(float(bound)), f"{sec:.6f}"])
        w.writerow(["#avg", "", repr(b), f"{t:.6f}"])
    return b, t


def read_bounds_csv(path) -> dict:
    """Map ``(g_id, h_id) -> bound``, skipping the footer."""
    out = {}
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
        for row in r:
            if not row or row[0].startswith("#"):
                continue
            out[(row[0], row[1])] = float(row[2])
    return out


def knn_ratio(collection: GraphCollection, bounds: dict) -> float:
    """Leave-one-out 1-NN accuracy with ``bounds[(g, h)]`` as distance from g to h.

    Ties go to the neighbour with the lowest graph id.
    """
    if not collection.has_classes:
        raise ValueError("1-NN evaluation needs class labels on every graph")
    graphs = sorted(collection.graphs, key=lambda g: g.id)
    if len(graphs) < 2:
        raise ValueError("1-NN evaluation needs at least two graphs")
    hits = 0
    for g in graphs:
        best = None
        for h in graphs:
            if h.id == g.id:
                continue
            key = (g.id, h.id)
            if key not in bounds:
                raise ValueError(f"no bound for pair {key}")
            if best is None or bounds[key] < best[0]:
                best = (bounds[key], h)
        hits += best[1].class_label == g.class_label
    return hits / len(graphs)
