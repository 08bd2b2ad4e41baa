"""Upper bounds for graph edit distance from ring local structures."""

from .datasets import generate_trees, knn_ratio, read_bounds_csv, write_bounds_csv
from .distances import SetDistance, SetDistanceKind, layer_distance, ring_distance
from .edit import NodeMap, induced_edit_cost, upper_bound_from_solutions
from .exact import exact_ged
from .graph import (ConstantCostModel, CostModel, GraphCollection, GraphFormatError, LabeledGraph,
                    LetterCostModel, constant_cost_model, letter_cost_model, load_collection,
                    save_collection)
from .heuristics import (HeuristicConfig, branch_like_distance, node_label_distance, populate_instance_classical,
                         populate_ring_instance, upper_bound)
from .learning import LearnedParams, learn_ring_params, load_params, objective_f, save_params
from .lsape import (Assignment, LsapeInstance, assignment_cost, brute_force, enumerate_optimal,
                    solve_greedy, solve_optimal)
from .ml import (OneClassSvmModel, extract_features, feature_dim, generate_training_maps, likelihood,
                 load_model, populate_instance_ml, save_model, train_one_class_svm, training_vectors)
from .rings import Layer, Ring, build_all_rings, build_ring

__version__ = "0.1.0"
