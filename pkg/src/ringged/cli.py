"""Command-line entry point: ``ringged {generate,compute,evaluate-knn,train}``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .datasets import generate_trees, knn_ratio, read_bounds_csv, write_bounds_csv
from .distances import SetDistance, SetDistanceKind
from .graph import load_collection, parse_cost_spec, save_collection
from .heuristics import METHODS, HeuristicConfig, ring_labels, upper_bound
from .learning import learn_ring_params, load_params, save_params
from .ml import (feature_dim, generate_training_maps, load_model, save_model, train_one_class_svm,
                 training_vectors)


class UsageError(ValueError):
    pass


def _size_range(text: str) -> tuple:
    try:
        lo, _, hi = text.partition("-")
        lo, hi = int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN-MAX, got {text!r}")
    return lo, hi


def _floats(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# --------------------------------------------------------------------------
# compute

def _config_from_args(args) -> HeuristicConfig:
    L, alpha, lam = args.L, args.alpha, args.lam
    if args.params:
        p = load_params(args.params)
        L, alpha, lam = int(p["L"]), tuple(p["alpha"]), tuple(p["lambda"])
    return HeuristicConfig(args.method, L=L or 3, alpha=alpha or (1 / 3, 1 / 3, 1 / 3), lam=lam,
                           num_solutions=args.solutions, greedy_final_solve=args.greedy)


def _compute_chunk(task) -> list:
    graphs, pairs, config, costs, model = task
    L = model.L if config.method == "ring_ml" else config.L
    kind = model.kind if config.method == "ring_ml" else config.set_distance_kind
    dist = SetDistance(costs, kind)
    needs_rings = config.method not in ("node_only", "branch_like")
    profiles = {}
    rows = []
    for i, j in pairs:
        G, H = graphs[i], graphs[j]
        pr = None
        if needs_rings:
            for t in (i, j):
                if t not in profiles:
                    profiles[t] = ring_labels(graphs[t], L)
            pr = (profiles[i], profiles[j])
        res = upper_bound(G, H, config, costs, model=model, dist=dist, profiles=pr)
        rows.append((G.id, H.id, res.bound, res.seconds))
    return rows


def compute_bounds(graphs, config, costs, model=None, threads: int = 1) -> list:
    """Bounds for all ordered pairs of distinct graphs, sorted by ``(g_id, h_id)``."""
    graphs = list(graphs)
    pairs = [(i, j) for i in range(len(graphs)) for j in range(len(graphs)) if i != j]
    if threads <= 1 or len(pairs) < 2:
        rows = _compute_chunk((graphs, pairs, config, costs, model))
    else:
        chunks = [pairs[k::threads] for k in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = ex.map(_compute_chunk, [(graphs, c, config, costs, model) for c in chunks if c])
            rows = [r for part in parts for r in part]
    return sorted(rows, key=lambda r: (r[0], r[1]))


def cmd_compute(args) -> int:
    coll = load_collection(args.dataset)
    costs = parse_cost_spec(args.costs)
    config = _config_from_args(args)
    model = None
    if config.method == "ring_ml":
        if not args.model:
            raise UsageError("method ring_ml needs --model")
        model = load_model(args.model)
    rows = compute_bounds(coll.graphs, config, costs, model, args.threads)
    b, t = write_bounds_csv(args.out, rows)
    print(f"{len(rows)} pairs, mean bound {b:.6g}, mean seconds {t:.6g} -> {args.out}")
    return 0


# --------------------------------------------------------------------------
# other commands

def cmd_generate(args) -> int:
    coll = generate_trees(args.sizes, args.alphabet, args.count, args.seed)
    save_collection(coll, args.out)
    print(f"wrote {len(coll)} trees to {args.out}")
    return 0


def cmd_evaluate_knn(args) -> int:
    coll = load_collection(args.dataset)
    r = knn_ratio(coll, read_bounds_csv(args.bounds))
    print(f"1-NN ratio r = {r:.6f}")
    return 0


def cmd_train(args) -> int:
    coll = load_collection(args.dataset)
    costs = parse_cost_spec(args.costs)
    kind = SetDistanceKind(args.kind)
    graphs = list(coll.graphs)
    if args.max_graphs is not None:
        graphs = graphs[: args.max_graphs]
    if not graphs:
        raise UsageError("training set is empty")
    meta = {"dataset": args.dataset, "seed": args.seed, "costs": args.costs, "num_graphs": len(graphs)}
    if args.mode == "ring_params":
        params = learn_ring_params(graphs, costs, kind, mu=args.mu, restarts=args.restarts, seed=args.seed)
        save_params(params, args.out, **meta)
        print(f"L={params.L} alpha={np.round(params.alpha, 4).tolist()} "
              f"lambda={np.round(params.lam, 4).tolist()} objective={params.objective:.6g}")
    else:
        L = args.L or 3
        sub = type(coll)(graphs, coll.node_label_kind, coll.edge_label_kind)
        maps = generate_training_maps(sub, costs, L=L, max_pairs=args.max_pairs, seed=args.seed)
        T = training_vectors(sub, maps, L, costs, kind)
        gamma = args.gamma or 1.0 / feature_dim(L)
        model = train_one_class_svm(T, nu=args.nu, gamma=gamma, L=L, kind=kind, density=not args.kernel_only)
        save_model(model, args.out)
        with open(args.out) as fh:
            doc = json.load(fh)
        doc.update(meta)
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=1)
        print(f"trained on {len(T)} vectors, {len(model.duals)} support vectors -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ringged", description="GED upper bounds via ring local structures")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=1)

    g = sub.add_parser("generate", help="write a synthetic collection of non-isomorphic trees")
    g.add_argument("--sizes", type=_size_range, default=(8, 12), help="node count range MIN-MAX")
    g.add_argument("--alphabet", type=int, default=1, help="number of node labels k")
    g.add_argument("--count", type=int, default=50)
    g.add_argument("--out", required=True)
    common(g)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("compute", help="bounds for all ordered pairs of a collection")
    c.add_argument("--dataset", required=True)
    c.add_argument("--method", choices=METHODS, default="ring_opt")
    c.add_argument("--params", help="JSON with L, alpha, lambda from 'train --mode ring_params'")
    c.add_argument("--model", help="JSON model from 'train --mode ml_model'")
    c.add_argument("--solutions", type=int, default=1, help="number s of optimal LSAPE solutions")
    c.add_argument("--greedy", action="store_true", help="solve the final instance greedily")
    c.add_argument("--L", type=int)
    c.add_argument("--alpha", type=_floats)
    c.add_argument("--lam", type=_floats)
    c.add_argument("--costs", default="constant", help="letter | constant | constant:a,b,c,d,e,f")
    c.add_argument("--out", required=True)
    common(c)
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("evaluate-knn", help="leave-one-out 1-NN ratio from a bounds CSV")
    k.add_argument("--dataset", required=True)
    k.add_argument("--bounds", required=True)
    common(k)
    k.set_defaults(func=cmd_evaluate_knn)

    t = sub.add_parser("train", help="learn ring parameters or a one-class SVM model")
    t.add_argument("--dataset", required=True)
    t.add_argument("--mode", choices=("ring_params", "ml_model"), default="ring_params")
    t.add_argument("--mu", type=float, default=1.0)
    t.add_argument("--kind", choices=[k.value for k in SetDistanceKind], default="lsape_optimal")
    t.add_argument("--restarts", type=int, default=20)
    t.add_argument("--max-graphs", type=int, help="use only the first N graphs for training")
    t.add_argument("--max-pairs", type=int, help="subsample ordered pairs for ml_model")
    t.add_argument("--L", type=int, help="ring size for ml_model (default 3)")
    t.add_argument("--nu", type=float, default=0.5)
    t.add_argument("--gamma", type=float, help="kernel width (default 1/dim)")
    t.add_argument("--kernel-only", action="store_true", help="drop the density normalizer from p*")
    t.add_argument("--costs", default="constant")
    t.add_argument("--out", required=True)
    common(t)
    t.set_defaults(func=cmd_train)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
