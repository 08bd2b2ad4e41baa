"""
Learning ring weights and a one-class SVM
=========================================

Part one tunes L, alpha and lambda on a handful of trees.
Part two trains a one-class SVM on features of optimal node assignments and
uses its likelihood to fill the LSAPE instance.
"""

import numpy as np

from ringged import (HeuristicConfig, constant_cost_model, generate_trees, generate_training_maps,
                     learn_ring_params, likelihood, train_one_class_svm, training_vectors, upper_bound)

costs = constant_cost_model()
trees = generate_trees((5, 8), 1, 6, seed=2)

params = learn_ring_params(trees.graphs, costs, mu=1.0, restarts=5, seed=0)
print("L =", params.L, "alpha =", np.round(params.alpha, 3), "lambda =", np.round(params.lam, 3))
print("objective: uniform start", round(params.history[0], 3), "-> learned", round(params.objective, 3))

# optimal maps from the exact search, one feature vector per assignment
maps = generate_training_maps(trees, costs, oracle_limit=16, L=2)
T = training_vectors(trees, maps, 2, costs)
print("training vectors:", T.shape)

# density=False keeps p* away from underflow in 22 dimensions
model = train_one_class_svm(T, nu=0.5, L=2, density=False)
print("support vectors:", len(model.duals))
probes = np.random.default_rng(0).uniform(T.min(0), T.max(0), size=(2000, T.shape[1]))
print("mean p*: training", likelihood(model, T).mean().round(3), " probes", likelihood(model, probes).mean().round(3))

G, H = trees.graphs[0], trees.graphs[1]
for method in ("ring_opt", "ring_ml"):
    cfg = HeuristicConfig(method, L=params.L, alpha=params.alpha, lam=params.lam) if method == "ring_opt" \
        else HeuristicConfig(method)
    print(method, upper_bound(G, H, cfg, costs, model=model).bound)
