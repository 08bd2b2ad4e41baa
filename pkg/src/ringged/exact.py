"""Exact graph edit distance for small graphs by exhaustive node-map search."""

from __future__ import annotations

from .edit import NodeMap, induced_edit_cost
from .graph import CostModel, LabeledGraph
from .lsape import EPS, Assignment

DEFAULT_MAX_NODES = 12


def _processing_order(G: LabeledGraph) -> list:
    # BFS from high-degree nodes so that edges get decided early
    order, seen = [], [False] * G.num_nodes
    for root in sorted(range(G.num_nodes), key=lambda x: (-G.degree(x), x)):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(G.neighbors(x), key=lambda y: (-G.degree(y), y)):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def exact_ged(G: LabeledGraph, H: LabeledGraph, costs: CostModel,
              max_nodes: int = DEFAULT_MAX_NODES) -> tuple:
    """Return ``(GED(G, H), optimal node map)``.

    Depth-first branch and bound over all node maps. A partial map is pruned
    when its cost plus a counting lower bound on the remaining node and edge
    operations reaches the incumbent. Raises ``ValueError`` when
    ``|V^G| + |V^H| > max_nodes``.
    """
    n, m = G.num_nodes, H.num_nodes
    if n + m > max_nodes:
        raise ValueError(f"exact GED limited to |V^G|+|V^H| <= {max_nodes}, got {n + m}")

    order = _processing_order(G)
    pos = {u: p for p, u in enumerate(order)}
    earlier_nbrs = [[w for w in G.neighbors(u) if pos[w] < pos[u]] for u in order]

    # suffix statistics over the processing order
    node_del = [costs.node_del(G.nodes[u]) for u in order]
    min_del_suffix = [0.0] * (n + 1)
    acc = float("inf")
    for p in range(n - 1, -1, -1):
        acc = min(acc, node_del[p])
        min_del_suffix[p] = acc
    undecided_g = [0] * (n + 1)
    min_edel_suffix = [float("inf")] * (n + 1)
    for (a, b), lab in G.edges.items():
        last = max(pos[a], pos[b])
        c = costs.edge_del(lab)
        for p in range(last + 1):
            undecided_g[p] += 1
            if c < min_edel_suffix[p]:
                min_edel_suffix[p] = c
    min_ins = min((costs.node_ins(b) for b in H.nodes), default=0.0)
    min_eins = min((costs.edge_ins(lab) for lab in H.edges.values()), default=0.0)
    n_edges_h = H.num_edges

    # incumbent: nodes matched by index
    start = Assignment.identity(n, m)
    best = [induced_edit_cost(G, H, start, costs), start.rows]

    image = [EPS] * n          # by G node
    preimage = [EPS] * m       # by H node
    decided_h = [0]

    def lower_bound(p: int) -> float:
        r, f = n - p, m - sum(1 for x in preimage if x != EPS)
        lb = (r - f) * min_del_suffix[p] if r > f else (f - r) * min_ins
        eg = undecided_g[p]
        eh = n_edges_h - decided_h[0]
        if eg > eh:
            lb += (eg - eh) * min_edel_suffix[p]
        elif eh > eg:
            lb += (eh - eg) * min_eins
        return lb

    def step_cost(u: int, p: int, v: int) -> float:
        lu = G.nodes[u]
        if v == EPS:
            c = costs.node_del(lu)
            for w in earlier_nbrs[p]:
                c += costs.edge_del(G.edge_label(u, w))
            return c
        c = costs.node_sub(lu, H.nodes[v])
        gn = set()
        for w in earlier_nbrs[p]:
            gn.add(image[w])
            iw = image[w]
            if iw != EPS and H.has_edge(v, iw):
                c += costs.edge_sub(G.edge_label(u, w), H.edge_label(v, iw))
            else:
                c += costs.edge_del(G.edge_label(u, w))
        for x in H.neighbors(v):
            if preimage[x] != EPS and x not in gn:
                c += costs.edge_ins(H.edge_label(v, x))
        return c

    def finish_cost() -> float:
        c = 0.0
        for v in range(m):
            if preimage[v] == EPS:
                c += costs.node_ins(H.nodes[v])
        for (a, b), lab in H.edges.items():
            if preimage[a] == EPS or preimage[b] == EPS:
                c += costs.edge_ins(lab)
        return c

    def dfs(p: int, g: float) -> None:
        if p == n:
            total = g + finish_cost()
            if total < best[0] - 1e-12:
                best[0] = total
                best[1] = tuple(image)
            return
        if g + lower_bound(p) >= best[0] - 1e-12:
            return
        u = order[p]
        options = [(step_cost(u, p, v), v) for v in range(m) if preimage[v] == EPS]
        options.append((step_cost(u, p, EPS), EPS))
        options.sort(key=lambda t: (t[0], t[1] == EPS, t[1]))
        for c, v in options:
            if g + c >= best[0] - 1e-12:
                continue
            image[u] = v
            if v != EPS:
                preimage[v] = u
                gained = sum(1 for x in H.neighbors(v) if preimage[x] != EPS and x != v)
                decided_h[0] += gained
            dfs(p + 1, g + c)
            if v != EPS:
                decided_h[0] -= gained
                preimage[v] = EPS
            image[u] = EPS

    dfs(0, 0.0)
    pi = Assignment.from_rows(best[1], m)
    return induced_edit_cost(G, H, pi, costs), pi
