"""Nondominated sorting, crowding distance and crowded-comparison survival."""

from __future__ import annotations

import numpy as np

__all__ = [
    "dominance_matrix",
    "fast_nondominated_sort",
    "crowding_distance",
    "rank_and_crowding",
    "select_best",
    "select_best_distinct",
]


def dominance_matrix(points) -> np.ndarray:
    """``D[i, j]`` is True when point ``i`` dominates point ``j`` (minimisation)."""
    P = np.asarray(points, dtype=float)
    le = np.ones((len(P), len(P)), dtype=bool)
    lt = np.zeros_like(le)
    for k in range(P.shape[1]):
        col = P[:, k]
        le &= col[:, None] <= col[None, :]
        lt |= col[:, None] < col[None, :]
    return le & lt


def fast_nondominated_sort(points) -> np.ndarray:
    """Front index of every point: 0 for the nondominated set, 1 for the next, ...

    Deb's counting scheme on a dense dominance matrix.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim < 2:
        P = P.reshape(-1, 2)
    n = len(P)
    ranks = np.full(n, -1, dtype=int)
    if not n:
        return ranks
    D = dominance_matrix(P)
    dominated_by = np.count_nonzero(D, axis=0)
    current = np.flatnonzero(dominated_by == 0)
    k = 0
    while len(current):
        ranks[current] = k
        dominated_by[current] = -1
        dominated_by -= np.count_nonzero(D[current], axis=0)
        current = np.flatnonzero(dominated_by == 0)
        k += 1
    return ranks


def crowding_distance(points) -> np.ndarray:
    """Crowding distance within one front; boundary points get ``inf``.

    Gaps are normalised by each objective's range; an objective with zero
    range adds nothing to interior points.
    """
    P = np.asarray(points, dtype=float)
    n = len(P)
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for k in range(P.shape[1]):
        order = np.argsort(P[:, k], kind="stable")
        col = P[order, k]
        span = col[-1] - col[0]
        dist[order[0]] = dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def rank_and_crowding(points) -> tuple[np.ndarray, np.ndarray]:
    P = np.asarray(points, dtype=float)
    ranks = fast_nondominated_sort(P)
    crowd = np.zeros(len(P))
    for r in np.unique(ranks):
        members = np.flatnonzero(ranks == r)
        crowd[members] = crowding_distance(P[members])
    return ranks, crowd


def select_best(points, size: int) -> np.ndarray:
    """Indices of the ``size`` best points by rank, then by larger crowding.

    Crowding is computed on each complete front before truncation; ties keep
    input order.
    """
    ranks, crowd = rank_and_crowding(points)
    order = np.lexsort((-crowd, ranks))
    return order[:size]


def select_best_distinct(genotypes, points, size: int) -> np.ndarray:
    """Like :func:`select_best`, but each genotype competes once.

    Repeated genotypes only fill slots left over once every distinct
    genotype is in, earliest copies first.
    """
    G = np.asarray(genotypes, dtype=bool)
    _, first = np.unique(np.packbits(G, axis=1), axis=0, return_index=True)
    is_first = np.zeros(len(G), dtype=bool)
    is_first[first] = True
    distinct = np.flatnonzero(is_first)
    best = distinct[select_best(np.asarray(points, float)[distinct], size)]
    if len(best) < size:
        best = np.concatenate((best, np.flatnonzero(~is_first)[: size - len(best)]))
    return best
