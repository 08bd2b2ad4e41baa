"""Linear sum assignment with error correction (LSAPE).

An instance is an ``(n+1, m+1)`` cost matrix whose last row holds insertion
costs and whose last column holds deletion costs. A feasible solution assigns
every real row to a distinct real column or to the dummy column, and every
real column not hit by a row is inserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

EPS = -1  # dummy row/column in Assignment tuples
BRUTE_FORCE_LIMIT = 7
SMALL_SIZE = 24  # square size up to which the list-based solver is used


@dataclass(frozen=True)
class LsapeInstance:
    costs: np.ndarray

    def __post_init__(self):
        C = np.array(self.costs, dtype=float)
        if C.ndim != 2 or C.shape[0] < 1 or C.shape[1] < 1:
            raise ValueError(f"LSAPE costs must be a 2-d matrix, got shape {C.shape}")
        if not np.all(np.isfinite(C)):
            raise ValueError("LSAPE costs must be finite")
        if C[-1, -1] != 0:
            raise ValueError("LSAPE corner cost c[n+1, m+1] must be 0")
        C.setflags(write=False)
        object.__setattr__(self, "costs", C)

    @property
    def n(self) -> int:
        return self.costs.shape[0] - 1

    @property
    def m(self) -> int:
        return self.costs.shape[1] - 1


InstanceLike = Union[LsapeInstance, np.ndarray, list]


def as_instance(C: InstanceLike) -> LsapeInstance:
    return C if isinstance(C, LsapeInstance) else LsapeInstance(np.asarray(C, dtype=float))


@dataclass(frozen=True)
class Assignment:
    """Error-correcting assignment.

    ``rows[i]`` is the column assigned to row ``i`` (``EPS`` for deletion) and
    ``cols[k]`` the row assigned to column ``k`` (``EPS`` for insertion).
    """

    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows = tuple(int(k) for k in self.rows)
        cols = tuple(int(i) for i in self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        n, m = len(rows), len(cols)
        for i, k in enumerate(rows):
            if k == EPS:
                continue
            if not 0 <= k < m or cols[k] != i:
                raise ValueError(f"inconsistent assignment at row {i} -> column {k}")
        for k, i in enumerate(cols):
            if i == EPS:
                continue
            if not 0 <= i < n or rows[i] != k:
                raise ValueError(f"inconsistent assignment at column {k} <- row {i}")

    @classmethod
    def from_rows(cls, rows, m: int) -> "Assignment":
        cols = [EPS] * m
        for i, k in enumerate(rows):
            if k != EPS:
                if not 0 <= k < m or cols[k] != EPS:
                    raise ValueError(f"column {k} assigned twice or out of range")
                cols[k] = i
        return cls(tuple(rows), tuple(cols))

    @classmethod
    def identity(cls, n: int, m: int) -> "Assignment":
        return cls.from_rows([i if i < m else EPS for i in range(n)], m)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.cols)

    def pairs(self) -> list:
        """All relation pairs, dummy side as ``EPS``."""
        out = [(i, k) for i, k in enumerate(self.rows)]
        out += [(EPS, k) for k, i in enumerate(self.cols) if i == EPS]
        return out

    def inverse(self) -> "Assignment":
        return Assignment(self.cols, self.rows)


def assignment_cost(C: InstanceLike, pi: Assignment) -> float:
    C = as_instance(C).costs
    n, m = C.shape[0] - 1, C.shape[1] - 1
    if pi.n != n or pi.m != m:
        raise ValueError(f"assignment shape ({pi.n},{pi.m}) does not fit instance ({n},{m})")
    total = 0.0
    for i, k in enumerate(pi.rows):
        total += C[i, m if k == EPS else k]
    for k, i in enumerate(pi.cols):
        if i == EPS:
            total += C[n, k]
    return float(total)


# --------------------------------------------------------------------------
# Optimal solver

def _hungarian(a: np.ndarray):
    """Shortest augmenting path Hungarian method on a square matrix.

    Returns ``(col_of_row, u, v)`` with dual potentials ``u[i] + v[j] <= a[i, j]``,
    tight on the returned assignment. Ties go to the lowest column index.
    """
    if a.shape[0] <= SMALL_SIZE:
        return _hungarian_small(a)
    N = a.shape[0]
    u = np.zeros(N + 1)
    v = np.zeros(N + 1)
    p = np.zeros(N + 1, dtype=int)  # p[j]: row (1-based) matched to column j
    way = np.zeros(N + 1, dtype=int)
    for i in range(1, N + 1):
        p[0] = i
        j0 = 0
        minv = np.full(N + 1, np.inf)
        used = np.zeros(N + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used[1:]
            cur = a[i0 - 1] - u[i0] - v[1:]
            upd = free & (cur < minv[1:])
            minv[1:][upd] = cur[upd]
            way[1:][upd] = j0
            masked = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            u[p[used]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.empty(N, dtype=int)
    col_of_row[p[1:] - 1] = np.arange(N)
    return col_of_row, u[1:], v[1:]


def _hungarian_small(a: np.ndarray):
    # same algorithm on Python lists; numpy call overhead dominates below SMALL_SIZE
    N = a.shape[0]
    rows = a.tolist()
    inf = math.inf
    u = [0.0] * (N + 1)
    v = [0.0] * (N + 1)
    p = [0] * (N + 1)
    way = [0] * (N + 1)
    for i in range(1, N + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (N + 1)
        used = [False] * (N + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = rows[i0 - 1]
            ui0 = u[i0]
            delta, j1 = inf, 0
            for j in range(1, N + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta, j1 = minv[j], j
            for j in range(N + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of_row = np.empty(N, dtype=int)
    col_of_row[np.array(p[1:]) - 1] = np.arange(N)
    return col_of_row, np.array(u[1:]), np.array(v[1:])


def _expand(C: np.ndarray, big: float) -> np.ndarray:
    """Square ``(n+m) x (n+m)`` LSAP equivalent of an LSAPE instance; ``big`` marks forbidden cells."""
    n, m = C.shape[0] - 1, C.shape[1] - 1
    N = n + m
    a = np.full((N, N), big)
    a[:n, :m] = C[:n, :m]
    a[np.arange(n), m + np.arange(n)] = C[:n, m]
    a[n + np.arange(m), np.arange(m)] = C[n, :m]
    a[n:, m:] = 0.0
    return a


def _solve_with_duals(C: np.ndarray):
    """Optimal LSAPE solution plus LSAPE dual variables (u for rows, v for columns)."""
    n, m = C.shape[0] - 1, C.shape[1] - 1
    if n == 0 or m == 0:
        rows = [EPS] * n
        return Assignment(tuple(rows), (EPS,) * m), C[:n, m].copy(), C[n, :m].copy()
    big = 2.0 * np.abs(C).sum() + 1.0
    a = _expand(C, big)
    col_of_row, U, V = _hungarian(a)
    rows = [int(k) if k < m else EPS for k in col_of_row[:n]]
    pi = Assignment.from_rows(rows, m)
    # fold the dummy copies back onto LSAPE duals
    u = U[:n] + V[m:]
    v = V[:m] + U[n:]
    return pi, u, v


def solve_optimal(C: InstanceLike) -> tuple:
    """Optimal LSAPE solution ``(assignment, cost)``."""
    C = as_instance(C).costs
    pi, _, _ = _solve_with_duals(C)
    return pi, assignment_cost(C, pi)


def optimal_cost(C: np.ndarray) -> float:
    """Optimal LSAPE cost of a raw cost matrix, with shortcuts for tiny shapes."""
    n, m = C.shape[0] - 1, C.shape[1] - 1
    if n == 0:
        return float(C[0, :m].sum())
    if m == 0:
        return float(C[:n, 0].sum())
    if n == 1 and m == 1:
        return float(min(C[0, 0], C[0, 1] + C[1, 0]))
    big = 2.0 * np.abs(C).sum() + 1.0
    a = _expand(C, big)
    col_of_row, _, _ = _hungarian(a)
    return float(a[np.arange(n + m), col_of_row].sum())


def solve_greedy(C: InstanceLike) -> tuple:
    """Greedy LSAPE solution: rows in order take their cheapest free column or the dummy."""
    C = as_instance(C).costs
    n, m = C.shape[0] - 1, C.shape[1] - 1
    free = np.ones(m + 1, dtype=bool)
    rows = []
    for i in range(n):
        row = np.where(free, C[i], np.inf)
        k = int(np.argmin(row))
        if k == m:
            rows.append(EPS)
        else:
            rows.append(k)
            free[k] = False
    pi = Assignment.from_rows(rows, m)
    return pi, assignment_cost(C, pi)


def greedy_cost(C: np.ndarray) -> float:
    return solve_greedy(C)[1]


def enumerate_optimal(C: InstanceLike, s: int) -> list:
    """Up to ``s`` pairwise distinct optimal solutions, starting with ``solve_optimal``'s.

    Optimal solutions are exactly the feasible ones that use only cells with
    zero reduced cost under an optimal dual, so a depth-first search over tight
    cells finds them without revisiting any.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    C = as_instance(C).costs
    n, m = C.shape[0] - 1, C.shape[1] - 1
    first, u, v = _solve_with_duals(C)
    opt = assignment_cost(C, first)
    out = [first]
    if s == 1:
        return out
    tol = 1e-9 * max(1.0, float(np.abs(C).max()))
    tight = np.zeros((n + 1, m + 1), dtype=bool)
    tight[:n, :m] = np.abs(C[:n, :m] - u[:, None] - v[None, :]) <= tol
    tight[:n, m] = np.abs(C[:n, m] - u) <= tol
    tight[n, :m] = np.abs(C[n, :m] - v) <= tol
    need_row = ~tight[n, :m]  # columns that cannot be inserted
    need_eps = ~tight[:n, m]  # rows that cannot be deleted
    adj = [[k for k in range(m) if tight[i, k]] for i in range(n)]
    col_adj = [[i for i in range(n) if tight[i, k]] for k in range(m)]
    seen = {first}
    rows = [EPS] * n
    taken = [False] * m

    def completable(i: int) -> bool:
        # rows i.. must cover every non-deletable row and every free non-insertable
        # column; two one-sided matchings suffice (Mendelsohn-Dulmage)
        req_rows = [r for r in range(i, n) if need_eps[r]]
        if req_rows and not _covers(req_rows, adj, lambda k: not taken[k]):
            return False
        req_cols = [k for k in range(m) if need_row[k] and not taken[k]]
        return not req_cols or _covers(req_cols, col_adj, lambda r: r >= i)

    def dfs(i: int) -> bool:
        if i == n:
            pi = Assignment.from_rows(rows, m)
            if pi not in seen and abs(assignment_cost(C, pi) - opt) <= tol * (n + m + 1):
                seen.add(pi)
                out.append(pi)
            return len(out) >= s
        for k in adj[i]:
            if not taken[k]:
                rows[i] = k
                taken[k] = True
                done = completable(i + 1) and dfs(i + 1)
                taken[k] = False
                rows[i] = EPS
                if done:
                    return True
        if tight[i, m]:
            rows[i] = EPS
            if completable(i + 1) and dfs(i + 1):
                return True
        return False

    dfs(0)
    return out


def _covers(left: list, adj: list, allowed) -> bool:
    """Whether a matching saturates every vertex in ``left`` (Kuhn's algorithm)."""
    match = {}

    def augment(x, visited) -> bool:
        for y in adj[x]:
            if y in visited or not allowed(y):
                continue
            visited.add(y)
            if y not in match or augment(match[y], visited):
                match[y] = x
                return True
        return False

    return all(augment(x, set()) for x in left)


# --------------------------------------------------------------------------
# Exhaustive oracle

def iter_feasible(n: int, m: int) -> Iterator[Assignment]:
    """Every feasible LSAPE solution of an ``n x m`` instance."""
    rows = [EPS] * n
    taken = [False] * m

    def rec(i):
        if i == n:
            yield Assignment.from_rows(rows, m)
            return
        for k in range(m):
            if not taken[k]:
                taken[k] = True
                rows[i] = k
                yield from rec(i + 1)
                taken[k] = False
        rows[i] = EPS
        yield from rec(i + 1)

    yield from rec(0)


def brute_force(C: InstanceLike) -> float:
    """Minimum cost over all feasible solutions; only for ``n, m <= 7``."""
    C = as_instance(C).costs
    n, m = C.shape[0] - 1, C.shape[1] - 1
    if n > BRUTE_FORCE_LIMIT or m > BRUTE_FORCE_LIMIT:
        raise ValueError(f"instance {n}x{m} too large for brute force (limit {BRUTE_FORCE_LIMIT})")
    return min(assignment_cost(C, pi) for pi in iter_feasible(n, m))
