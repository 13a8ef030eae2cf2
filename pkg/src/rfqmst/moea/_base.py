"""Pieces shared by both algorithms: budgeted evaluation, batch repair, results."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from sklearn.utils.validation import check_is_fitted

from ..core import EvalContext, ObjectivePair, evaluate_many, repair
from ..metrics import Front
from .sorting import rank_and_crowding

Observer = Callable[[np.ndarray], None]


class Individual(NamedTuple):
    genotype: np.ndarray
    objectives: ObjectivePair
    rank: int
    crowding: float


class RunResult(NamedTuple):
    population: np.ndarray
    objectives: np.ndarray
    n_evaluations: int
    n_generations: int
    n_restarts: int

    @property
    def front(self) -> Front:
        return Front(self.objectives, self.population)


def check_prob(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")


def check_sizes(population: int, max_evaluations: int) -> None:
    if population < 4:
        raise ValueError(f"population must be at least 4, got {population}")
    if max_evaluations < population:
        raise ValueError(
            f"max_evaluations ({max_evaluations}) must cover the initial population ({population})"
        )


def floor_frac(frac: float, n: int) -> int:
    # round first so 0.07 * 100 does not land on 6.999...
    return math.floor(round(frac * n, 9))


def ceil_frac(frac: float, n: int) -> int:
    return math.ceil(round(frac * n, 9))


class Evaluator:
    """Evaluates batches while enforcing the budget and notifying an observer."""

    def __init__(self, ctx: EvalContext, budget: int, observer: Observer | None = None):
        self.ctx = ctx
        self.budget = budget
        self.used = 0
        self.observer = observer

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    def __call__(self, genotypes: np.ndarray) -> np.ndarray:
        if len(genotypes) > self.remaining:
            raise RuntimeError("evaluation budget exceeded")
        if self.observer is not None:
            self.observer(genotypes)
        self.used += len(genotypes)
        return evaluate_many(self.ctx, genotypes)


def repair_rows(ctx: EvalContext, rows: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    inst = ctx.instance
    out = np.empty((len(rows), inst.edge_count), dtype=bool)
    for i, row in enumerate(rows):
        out[i] = repair(inst, row, rng)
    return out


def initial_population(ctx: EvalContext, size: int, rng: np.random.Generator) -> np.ndarray:
    # uniform random bits, repaired
    raw = rng.random((size, ctx.instance.edge_count)) < 0.5
    return repair_rows(ctx, raw, rng)


def genotype_multiset(pop: np.ndarray) -> list[bytes]:
    return sorted(row.tobytes() for row in np.packbits(pop, axis=1))


class PopulationMixin:
    """Shared read-outs for fitted estimators."""

    def individuals(self) -> list[Individual]:
        """Final population with rank and crowding, best first."""
        check_is_fitted(self, "population_")
        ranks, crowd = rank_and_crowding(self.objectives_)
        order = np.lexsort((-crowd, ranks))
        return [
            Individual(self.population_[i].copy(), ObjectivePair(*map(float, self.objectives_[i])),
                       int(ranks[i]), float(crowd[i]))
            for i in order
        ]
