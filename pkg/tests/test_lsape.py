import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringged.lsape import (EPS, Assignment, LsapeInstance, assignment_cost, brute_force, enumerate_optimal,
                           iter_feasible, solve_greedy, solve_optimal)

from helpers import LETTER_NODE_COSTS


def instances(max_n=5, max_cost=9):
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_n))
        m = draw(st.integers(0, max_n))
        vals = draw(st.lists(st.integers(0, max_cost), min_size=(n + 1) * (m + 1), max_size=(n + 1) * (m + 1)))
        C = np.array(vals, dtype=float).reshape(n + 1, m + 1)
        C[n, m] = 0
        return C
    return build()


def test_letter_node_costs_identity_cost():
    pi = Assignment.from_rows([0, 1, 2, 3, EPS], 4)
    assert assignment_cost(LETTER_NODE_COSTS, pi) == pytest.approx(1.774, abs=2e-3)


def test_letter_node_costs_optimum():
    pi, cost = solve_optimal(LETTER_NODE_COSTS)
    assert pi.rows == (0, 1, 2, 3, EPS)
    assert cost == pytest.approx(1.774, abs=2e-3)
    assert brute_force(LETTER_NODE_COSTS) == pytest.approx(1.774, abs=2e-3)


def test_empty_and_tiny():
    assert assignment_cost(np.zeros((1, 1)), Assignment((), ())) == 0
    C = np.array([[5.0, 3.0], [2.0, 0.0]])
    assert assignment_cost(C, Assignment((EPS,), (EPS,))) == 5
    pi, cost = solve_optimal(C)
    assert cost == 5 and pi.rows == (EPS,)
    assert solve_optimal(np.zeros((4, 4)))[1] == 0


def test_instance_validation():
    with pytest.raises(ValueError, match="corner"):
        LsapeInstance(np.ones((2, 2)))
    with pytest.raises(ValueError):
        LsapeInstance(np.array([[np.inf, 0.0], [0.0, 0.0]]))


def test_assignment_validation():
    with pytest.raises(ValueError):
        Assignment((0, 0), (0, EPS))
    with pytest.raises(ValueError):
        Assignment((0,), (EPS,))
    with pytest.raises(ValueError):
        assignment_cost(np.zeros((3, 3)), Assignment.identity(1, 1))


def test_greedy_examples():
    assert solve_greedy(np.zeros((3, 3)))[1] == 0
    C = np.ones((4, 4)) - np.eye(4)
    C[3, 3] = 0
    assert solve_greedy(C)[1] == 0
    C2 = np.array([[1.0, 2.0, 9.0], [1.0, 9.0, 9.0], [9.0, 9.0, 0.0]])
    pi, cost = solve_greedy(C2)
    assert pi.rows == (0, 1) and cost == 10
    assert solve_optimal(C2)[1] == 3


def test_enumeration_examples():
    C = np.array([[0, 0, 9], [0, 0, 9], [9, 9, 0]], dtype=float)
    sols = enumerate_optimal(C, 2)
    assert len(sols) == 2 and len(set(sols)) == 2
    assert all(assignment_cost(C, p) == 0 for p in sols)
    assert brute_force(C) == 0
    unique = np.array([[0, 5, 9], [5, 0, 9], [9, 9, 0]], dtype=float)
    assert enumerate_optimal(unique, 10) == [solve_optimal(unique)[0]]
    with pytest.raises(ValueError):
        enumerate_optimal(C, 0)


def test_brute_force_limit():
    with pytest.raises(ValueError, match="too large"):
        brute_force(np.zeros((9, 2)))


def test_iter_feasible_counts():
    # sum_k C(n,k) C(m,k) k!
    assert sum(1 for _ in iter_feasible(2, 2)) == 7
    assert sum(1 for _ in iter_feasible(3, 0)) == 1


@settings(max_examples=150, deadline=None)
@given(C=instances())
def test_optimal_matches_brute_force(C):
    pi, cost = solve_optimal(C)
    assert cost == brute_force(C)
    assert cost == assignment_cost(C, pi)


@settings(max_examples=100, deadline=None)
@given(C=instances(max_n=4, max_cost=2), s=st.integers(1, 30))
def test_enumeration_contract(C, s):
    opt = brute_force(C)
    n, m = C.shape[0] - 1, C.shape[1] - 1
    n_opt = sum(1 for p in iter_feasible(n, m) if assignment_cost(C, p) == opt)
    sols = enumerate_optimal(C, s)
    assert sols[0] == solve_optimal(C)[0]
    assert len(set(sols)) == len(sols) == min(s, n_opt)
    assert all(assignment_cost(C, p) == opt for p in sols)


@settings(max_examples=100, deadline=None)
@given(C=instances())
def test_greedy_never_beats_optimal(C):
    pi, cost = solve_greedy(C)
    assert cost >= solve_optimal(C)[1] - 1e-12
    assert cost == assignment_cost(C, pi)
    assert solve_greedy(C) == (pi, cost)


def test_large_instance_uses_array_solver():
    rng = np.random.default_rng(1)
    C = rng.integers(0, 20, (30, 28)).astype(float)
    C[-1, -1] = 0
    pi, cost = solve_optimal(C)
    # any single swap of two substitutions cannot improve an optimal solution
    rows = list(pi.rows)
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if rows[a] != EPS and rows[b] != EPS:
                swapped = rows.copy()
                swapped[a], swapped[b] = rows[b], rows[a]
                assert assignment_cost(C, Assignment.from_rows(swapped, 27)) >= cost - 1e-9
