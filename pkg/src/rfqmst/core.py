"""Spanning-tree genotypes and crisp bi-objective evaluation.

A genotype is a boolean vector with one entry per canonical edge id. The two
objectives are the crisp chance-constrained bounds of the summed linear
weights and of the summed quadratic weights over unordered pairs of selected
edges. Each objective uses its own ``(alpha, beta)``; ``beta <= 0.5`` selects
the lower credibility branch and ``beta > 0.5`` the upper one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .instance import Instance
from .uncertainty import (
    AggregatedChance,
    ConfidenceLevels,
    chance_reduce,
    tfv_affine_sum,
)

__all__ = [
    "ObjectivePair",
    "EvalContext",
    "InfeasibleTreeError",
    "check_bits",
    "bits_to_str",
    "parse_bits",
    "tree_violation",
    "is_spanning_tree",
    "repair",
    "random_tree",
    "aggregate",
    "evaluate",
    "evaluate_many",
    "dominates",
]


class ObjectivePair(NamedTuple):
    f1: float
    f2: float


@dataclass(frozen=True)
class EvalContext:
    instance: Instance
    levels: ConfidenceLevels

    @classmethod
    def from_levels(cls, instance: Instance, alpha: float, beta: float) -> "EvalContext":
        return cls(instance, ConfidenceLevels.uniform(alpha, beta))


class InfeasibleTreeError(ValueError):
    """A bit vector that does not encode a spanning tree."""


def check_bits(inst: Instance, bits) -> np.ndarray:
    """Validate a genotype and return it as a boolean array."""
    arr = np.asarray(bits)
    if arr.ndim != 1 or arr.shape[0] != inst.edge_count:
        raise ValueError(f"genotype must have {inst.edge_count} entries, got shape {arr.shape}")
    if arr.dtype != bool:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("genotype entries must be 0 or 1")
        arr = arr.astype(bool)
    return arr


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in bits)


def parse_bits(text: str, length: int | None = None) -> np.ndarray:
    """Parse ``"1010..."`` (spaces, commas and parentheses ignored)."""
    digits = [c for c in text if c not in " ,()\t"]
    if not digits or any(c not in "01" for c in digits):
        raise ValueError(f"not a bit string: {text!r}")
    if length is not None and len(digits) != length:
        raise ValueError(f"bit string has {len(digits)} entries, expected {length}")
    return np.array([c == "1" for c in digits], dtype=bool)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _acyclic(ends, edges, n: int) -> bool:
    parent = list(range(n + 1))
    for e in edges:
        a, b = ends[e]
        ra, rb = _find(parent, a), _find(parent, b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def tree_violation(inst: Instance, bits) -> str | None:
    """Describe why ``bits`` is not a spanning tree, or ``None`` when it is."""
    bits = check_bits(inst, bits)
    need = inst.vertex_count - 1
    chosen = np.flatnonzero(bits)
    if len(chosen) != need:
        return f"selects {len(chosen)} edges, a spanning tree needs exactly {need}"
    parent = list(range(inst.vertex_count + 1))
    ends = inst.endpoint_list
    for e in chosen:
        a, b = ends[e]
        ra, rb = _find(parent, a), _find(parent, b)
        if ra == rb:
            return f"edge {inst.edges[e].label} closes a cycle"
        parent[ra] = rb
    # n-1 acyclic edges on n vertices always connect them
    return None


def is_spanning_tree(inst: Instance, bits) -> bool:
    return tree_violation(inst, bits) is None


def repair(inst: Instance, bits, rng: np.random.Generator) -> np.ndarray:
    """Turn any bit vector into a spanning tree.

    Valid trees are returned unchanged without touching ``rng``. Otherwise the
    selected edges are scanned in shuffled order and kept while they do not
    close a cycle, then the forest is completed from the shuffled unselected
    edges.
    """
    bits = check_bits(inst, bits)
    n = inst.vertex_count
    ends = inst.endpoint_list
    flags = bits.tolist()
    chosen = [e for e, f in enumerate(flags) if f]
    if len(chosen) == n - 1 and _acyclic(ends, chosen, n):
        return bits.copy()

    parent = list(range(n + 1))
    out = [False] * len(flags)
    need = n - 1
    for pool in (chosen, [e for e, f in enumerate(flags) if not f]):
        for k in rng.permutation(len(pool)).tolist():
            e = pool[k]
            a, b = ends[e]
            ra, rb = _find(parent, a), _find(parent, b)
            if ra != rb:
                parent[ra] = rb
                out[e] = True
                need -= 1
                if need == 0:
                    return np.array(out, dtype=bool)
    raise InfeasibleTreeError("instance graph is not connected")


def random_tree(inst: Instance, rng: np.random.Generator) -> np.ndarray:
    return repair(inst, np.zeros(inst.edge_count, dtype=bool), rng)


def aggregate(inst: Instance, tree, which: str) -> AggregatedChance:
    """Summed chance data of a tree's linear or quadratic weights.

    The fuzzy lower bound ``p`` sums each base shifted by its ``a3`` offset,
    and the width sums ``a4 - a3``. Quadratic sums run over unordered pairs
    of distinct selected edges, each pair counted once.
    """
    tree = check_bits(inst, tree)
    if which == "linear":
        weights = [inst.edges[e].weight for e in np.flatnonzero(tree)]
    elif which == "quadratic":
        weights = [w for (i, j), w in inst.quads.items() if tree[i] and tree[j]]
    else:
        raise ValueError(f"which must be 'linear' or 'quadratic', got {which!r}")
    p = tfv_affine_sum((w.base, 1.0, w.a3) for w in weights)
    q1 = sum(w.width for w in weights)
    return AggregatedChance(p, q1)


def evaluate(ctx: EvalContext, tree, regime: str | None = None) -> ObjectivePair:
    """Crisp objective pair of one tree via :func:`aggregate` and
    :func:`~rfqmst.uncertainty.chance_reduce`.

    ``regime`` forces the ``"low"`` or ``"high"`` credibility branch for both
    objectives; by default each objective picks by its own ``beta``.
    """
    lv = ctx.levels
    f1 = chance_reduce(aggregate(ctx.instance, tree, "linear"), lv.alpha1, lv.beta1, regime)
    f2 = chance_reduce(aggregate(ctx.instance, tree, "quadratic"), lv.alpha2, lv.beta2, regime)
    return ObjectivePair(f1, f2)


def _reduce_columns(p: np.ndarray, q1: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    u, v, w = p[:, 0], p[:, 1], p[:, 2]
    if beta <= 0.5:
        return u + 2.0 * alpha * q1 + 2.0 * beta * (v - u)
    return 2.0 * v - w + 2.0 * alpha * q1 + 2.0 * beta * (w - v)


def _row_sums(mask: np.ndarray, values: np.ndarray) -> np.ndarray:
    # one contiguous reduction per column keeps each row's summation order
    # independent of how many rows are in the batch
    out = np.empty((mask.shape[0], values.shape[1]))
    for c in range(values.shape[1]):
        out[:, c] = np.where(mask, values[:, c], 0.0).sum(axis=1)
    return out


def evaluate_many(ctx: EvalContext, trees) -> np.ndarray:
    """Objectives of a batch of genotypes, shape ``(k, 2)``.

    Vectorised equivalent of :func:`evaluate`; the value for a given row does
    not depend on the rest of the batch.
    """
    X = np.asarray(trees, dtype=bool)
    if X.ndim == 1:
        X = X[None, :]
    inst, lv = ctx.instance, ctx.levels
    lin = inst.linear_arrays
    lin_cols = np.column_stack([lin["p"], lin["q1"]])
    lin_sum = _row_sums(X, lin_cols)

    qa = inst.quad_arrays
    if len(qa["q1"]):
        pair_mask = X[:, qa["i"]] & X[:, qa["j"]]
        quad_sum = _row_sums(pair_mask, np.column_stack([qa["p"], qa["q1"]]))
    else:
        quad_sum = np.zeros((X.shape[0], 4))

    out = np.empty((X.shape[0], 2))
    out[:, 0] = _reduce_columns(lin_sum[:, :3], lin_sum[:, 3], lv.alpha1, lv.beta1)
    out[:, 1] = _reduce_columns(quad_sum[:, :3], quad_sum[:, 3], lv.alpha2, lv.beta2)
    return out


def dominates(a, b) -> bool:
    """Pareto dominance for minimisation: ``a <= b`` everywhere, ``<`` somewhere."""
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))
