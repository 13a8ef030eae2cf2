"""Variation operators on boolean genotypes."""

from __future__ import annotations

import numpy as np

__all__ = ["hux", "single_point_crossover", "bit_flip", "binary_tournament", "hamming"]


def hamming(a, b) -> int:
    return int(np.count_nonzero(np.asarray(a, bool) != np.asarray(b, bool)))


def hux(parent_a, parent_b, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Half-uniform crossover.

    Agreeing bits are copied; exactly ``d // 2`` of the ``d`` differing
    positions, drawn uniformly, are exchanged between the children.
    """
    a = np.array(parent_a, dtype=bool)
    b = np.array(parent_b, dtype=bool)
    if a.shape != b.shape:
        raise ValueError("parents must have equal length")
    diff = np.flatnonzero(a != b)
    swap = rng.choice(diff, size=len(diff) // 2, replace=False) if len(diff) > 1 else diff[:0]
    a[swap], b[swap] = b[swap], a[swap]
    return a, b


def single_point_crossover(parents_a: np.ndarray, parents_b: np.ndarray, prob: float,
                           rng: np.random.Generator):
    """Row-wise one-point crossover applied to each pair with probability ``prob``."""
    A = np.array(parents_a, dtype=bool)
    B = np.array(parents_b, dtype=bool)
    k, m = A.shape
    if m < 2:
        return A, B
    cross = rng.random(k) < prob
    cut = rng.integers(1, m, size=k)
    tail = (np.arange(m)[None, :] >= cut[:, None]) & cross[:, None]
    A2 = np.where(tail, B, A)
    B2 = np.where(tail, A, B)
    return A2, B2


def bit_flip(genotypes: np.ndarray, prob: float, rng: np.random.Generator) -> np.ndarray:
    G = np.asarray(genotypes, dtype=bool)
    return G ^ (rng.random(G.shape) < prob)


def binary_tournament(ranks: np.ndarray, crowd: np.ndarray, count: int,
                      rng: np.random.Generator) -> np.ndarray:
    """Winners of ``count`` tournaments: lower rank, then larger crowding, then the first pick."""
    n = len(ranks)
    a = rng.integers(0, n, size=count)
    b = rng.integers(0, n, size=count)
    b_wins = (ranks[b] < ranks[a]) | ((ranks[b] == ranks[a]) & (crowd[b] > crowd[a]))
    return np.where(b_wins, b, a)
