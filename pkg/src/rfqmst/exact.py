"""Exhaustive ground truth: tree enumeration, matrix-tree count, exact fronts, epsilon-constraint.

Only meant for small graphs. Enumeration is refused when the matrix-tree
count exceeds ``max_trees`` (10**7 by default).
"""

from __future__ import annotations

from typing import Iterator

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import EvalContext, ObjectivePair, bits_to_str, evaluate_many
from .instance import Instance
from .metrics import Front

__all__ = [
    "EnumerationBudgetError",
    "InfeasibleEpsilonError",
    "DEFAULT_MAX_TREES",
    "kirchhoff_count",
    "enumerate_spanning_trees",
    "spanning_tree_matrix",
    "ExactSolver",
    "exact_pareto_front",
    "epsilon_constraint_solve",
]

DEFAULT_MAX_TREES = 10 ** 7


class EnumerationBudgetError(RuntimeError):
    def __init__(self, count: int, limit: int):
        super().__init__(
            f"instance has {count} spanning trees, above the enumeration limit of {limit}"
        )
        self.count = count
        self.limit = limit


class InfeasibleEpsilonError(ValueError):
    """No tree satisfies the epsilon bound."""


def kirchhoff_count(inst: Instance) -> int:
    """Number of spanning trees, as an exact integer.

    Fraction-free (Bareiss) elimination of the Laplacian with the first
    vertex's row and column removed.
    """
    n = inst.vertex_count
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for u, v in inst.endpoint_list:
        a, b = u - 1, v - 1
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    M = [row[1:] for row in lap[1:]]
    size = n - 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, size):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[-1][-1]


def _check_budget(inst: Instance, max_trees: int) -> int:
    count = kirchhoff_count(inst)
    if count > max_trees:
        raise EnumerationBudgetError(count, max_trees)
    return count


def enumerate_spanning_trees(inst: Instance, max_trees: int = DEFAULT_MAX_TREES) -> Iterator[np.ndarray]:
    """Yield every spanning tree exactly once, as boolean genotypes.

    Backtracking over edges in canonical order, including an edge before
    excluding it. An edge is only excluded while the remaining edges can
    still connect the graph, so every leaf of the search is a tree.
    """
    _check_budget(inst, max_trees)
    n, m = inst.vertex_count, inst.edge_count
    ends = inst.endpoint_list
    parent = list(range(n + 1))
    bits = np.zeros(m, dtype=bool)

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def completable(start):
        # do the current forest plus edges[start:] still span the graph?
        p = parent[:]

        def f(x):
            while p[x] != x:
                p[x] = p[p[x]]
                x = p[x]
            return x

        comps = sum(1 for x in range(1, n + 1) if f(x) == x)
        for a, b in ends[start:]:
            ra, rb = f(a), f(b)
            if ra != rb:
                p[ra] = rb
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def search(i, need):
        if need == 0:
            yield bits.copy()
            return
        if m - i < need:
            return
        a, b = ends[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            bits[i] = True
            yield from search(i + 1, need - 1)
            bits[i] = False
            parent[ra] = ra
        if completable(i + 1):
            yield from search(i + 1, need)

    if n == 1:
        yield bits.copy()
        return
    yield from search(0, n - 1)


def spanning_tree_matrix(inst: Instance, max_trees: int = DEFAULT_MAX_TREES) -> np.ndarray:
    """All spanning trees stacked into a ``(count, m)`` boolean matrix."""
    trees = list(enumerate_spanning_trees(inst, max_trees))
    return np.array(trees, dtype=bool).reshape(len(trees), inst.edge_count)


def _bit_keys(trees: np.ndarray) -> np.ndarray:
    # lexicographic order of the bit strings, as sortable byte strings
    return np.array([bits_to_str(t) for t in trees])


class ExactSolver(BaseEstimator):
    """Enumerate every spanning tree once, then answer front and epsilon queries.

    Parameters
    ----------
    max_trees : int, default=10**7
        Refuse instances whose spanning-tree count exceeds this.

    Attributes
    ----------
    trees_ : ndarray of shape (n_trees, n_edges)
        All spanning trees, in lexicographic bit-string order.
    objectives_ : ndarray of shape (n_trees, 2)
    front_ : Front
        Exact Pareto front; among objective-identical trees the one with the
        lowest bit string represents the point.
    n_trees_ : int
    """

    def __init__(self, max_trees=DEFAULT_MAX_TREES):
        self.max_trees = max_trees

    def fit(self, ctx: EvalContext, y=None):
        trees = spanning_tree_matrix(ctx.instance, self.max_trees)
        keys = _bit_keys(trees)
        order = np.argsort(keys, kind="stable")
        self.trees_ = trees[order]
        self.bit_keys_ = keys[order]
        self.objectives_ = evaluate_many(ctx, self.trees_)
        self.n_trees_ = len(self.trees_)
        self.front_ = Front(self.objectives_, self.trees_)
        return self

    def epsilon_constraint(self, primary: int, eps: float) -> tuple[np.ndarray, ObjectivePair]:
        """Minimise objective ``primary`` subject to the other objective ``<= eps``.

        Ties go to the smaller other objective, then the lowest bit string.
        """
        check_is_fitted(self, "objectives_")
        if primary not in (1, 2):
            raise ValueError(f"primary must be 1 or 2, got {primary!r}")
        r, s = primary - 1, 2 - primary
        ok = np.flatnonzero(self.objectives_[:, s] <= eps)
        if not len(ok):
            raise InfeasibleEpsilonError(
                f"no spanning tree has f{s + 1} <= {eps}; minimum is {self.objectives_[:, s].min()}"
            )
        obj = self.objectives_[ok]
        # candidates are already in bit-string order, and lexsort is stable
        best = ok[np.lexsort((obj[:, s], obj[:, r]))[0]]
        return self.trees_[best].copy(), ObjectivePair(*map(float, self.objectives_[best]))

    def epsilon_sweep(self, primary: int = 1) -> list[tuple[float, np.ndarray, ObjectivePair]]:
        """Solve once per distinct value of the constrained objective, ascending."""
        check_is_fitted(self, "objectives_")
        s = 2 - primary
        trace = []
        for eps in np.unique(self.objectives_[:, s]):
            tree, obj = self.epsilon_constraint(primary, float(eps))
            trace.append((float(eps), tree, obj))
        return trace


def exact_pareto_front(ctx: EvalContext, max_trees: int = DEFAULT_MAX_TREES) -> Front:
    return ExactSolver(max_trees).fit(ctx).front_


def epsilon_constraint_solve(
    ctx: EvalContext, primary: int, eps: float, max_trees: int = DEFAULT_MAX_TREES
) -> tuple[np.ndarray, ObjectivePair]:
    return ExactSolver(max_trees).fit(ctx).epsilon_constraint(primary, eps)
