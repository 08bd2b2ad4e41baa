import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringged.edit import induced_edit_cost
from ringged.exact import exact_ged
from ringged.graph import LabeledGraph, constant_cost_model, letter_cost_model

from helpers import brute_force_ged, letter_pair, path, random_pair


def test_self_distance_zero():
    G, _ = letter_pair()
    assert exact_ged(G, G, letter_cost_model())[0] == 0


def test_single_nodes():
    a = LabeledGraph.from_edge_list("a", ["a"], [])
    b = LabeledGraph.from_edge_list("b", ["b"], [])
    assert exact_ged(a, b, constant_cost_model())[0] == 1


def test_triangle_vs_path():
    tri = LabeledGraph.from_edge_list("t", "aaa", [(0, 1), (1, 2), (0, 2)])
    assert exact_ged(tri, path(3), constant_cost_model())[0] == 1


def test_letter_pair_is_example_map_cost():
    G, H = letter_pair()
    d, pi = exact_ged(G, H, letter_cost_model())
    assert d == pytest.approx(brute_force_ged(G, H, letter_cost_model()))
    assert d == pytest.approx(induced_edit_cost(G, H, pi, letter_cost_model()))


def test_size_cap():
    big = path(7)
    with pytest.raises(ValueError, match="limited"):
        exact_ged(big, big, constant_cost_model())
    assert exact_ged(big, big, constant_cost_model(), max_nodes=14)[0] == 0


def test_empty_graphs():
    e = LabeledGraph.from_edge_list("e", [], [])
    assert exact_ged(e, e, constant_cost_model())[0] == 0
    assert exact_ged(e, path(2), constant_cost_model(1, 2, 3, 1, 1, 5))[0] == 11


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_matches_exhaustive_enumeration(seed):
    rng = np.random.default_rng(seed)
    G, H, c = random_pair(rng, n_max=4)
    d, pi = exact_ged(G, H, c)
    assert d == pytest.approx(brute_force_ged(G, H, c), abs=1e-9)
    assert d == pytest.approx(induced_edit_cost(G, H, pi, c), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_symmetric(seed):
    rng = np.random.default_rng(seed)
    G, H, c = random_pair(rng, n_max=5, symmetric=True)
    assert exact_ged(G, H, c)[0] == pytest.approx(exact_ged(H, G, c)[0], abs=1e-9)
