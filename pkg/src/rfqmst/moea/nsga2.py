"""NSGA-II over spanning-tree genotypes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from ..core import EvalContext
from ..metrics import Front
from ._base import (
    Evaluator,
    Observer,
    PopulationMixin,
    RunResult,
    check_prob,
    check_sizes,
    initial_population,
    repair_rows,
)
from .operators import binary_tournament, bit_flip, single_point_crossover
from .sorting import rank_and_crowding, select_best

__all__ = ["NsgaParams", "nsga2_run", "NSGA2"]


@dataclass(frozen=True)
class NsgaParams:
    population: int = 100
    max_evaluations: int = 50_000
    crossover_prob: float = 0.9
    mutation_prob_per_bit: float = 0.03

    def __post_init__(self):
        check_sizes(self.population, self.max_evaluations)
        if self.population % 2:
            raise ValueError(f"population must be even, got {self.population}")
        check_prob("crossover_prob", self.crossover_prob)
        check_prob("mutation_prob_per_bit", self.mutation_prob_per_bit)


def _run(ctx: EvalContext, params: NsgaParams, rng: np.random.Generator,
         observer: Observer | None = None) -> RunResult:
    N = params.population
    evaluate = Evaluator(ctx, params.max_evaluations, observer)
    pop = initial_population(ctx, N, rng)
    obj = evaluate(pop)
    ranks, crowd = rank_and_crowding(obj)
    generations = 0
    while evaluate.remaining > 0:
        n_off = min(N, evaluate.remaining)
        n_pairs = (n_off + 1) // 2
        mates = binary_tournament(ranks, crowd, 2 * n_pairs, rng)
        a, b = single_point_crossover(pop[mates[0::2]], pop[mates[1::2]], params.crossover_prob, rng)
        kids = np.empty((2 * n_pairs, pop.shape[1]), dtype=bool)
        kids[0::2], kids[1::2] = a, b
        kids = bit_flip(kids[:n_off], params.mutation_prob_per_bit, rng)
        kids = repair_rows(ctx, kids, rng)
        kid_obj = evaluate(kids)

        merged = np.vstack((pop, kids))
        merged_obj = np.vstack((obj, kid_obj))
        keep = select_best(merged_obj, N)
        pop, obj = merged[keep], merged_obj[keep]
        ranks, crowd = rank_and_crowding(obj)
        generations += 1
    return RunResult(pop, obj, evaluate.used, generations, 0)


def nsga2_run(ctx: EvalContext, params: NsgaParams, rng: np.random.Generator) -> Front:
    """Final population's nondominated set, genotypes attached."""
    return _run(ctx, params, rng).front


class NSGA2(PopulationMixin, BaseEstimator):
    """Elitist nondominated-sorting GA with repair to spanning trees.

    Binary tournament on (rank, crowding), one-point crossover, per-bit
    mutation; every offspring is repaired before evaluation. Parents and
    offspring compete for the next population.

    Attributes
    ----------
    front_ : Front
    population_, objectives_ : ndarray
        Final population and its objective values.
    n_evaluations_, n_generations_ : int
    """

    def __init__(self, population=100, max_evaluations=50_000, crossover_prob=0.9,
                 mutation_prob_per_bit=0.03, random_state=None):
        self.population = population
        self.max_evaluations = max_evaluations
        self.crossover_prob = crossover_prob
        self.mutation_prob_per_bit = mutation_prob_per_bit
        self.random_state = random_state

    def _params(self) -> NsgaParams:
        return NsgaParams(self.population, self.max_evaluations, self.crossover_prob,
                          self.mutation_prob_per_bit)

    def fit(self, ctx: EvalContext, y=None, observer: Observer | None = None):
        res = _run(ctx, self._params(), np.random.default_rng(self.random_state), observer)
        self.population_ = res.population
        self.objectives_ = res.objectives
        self.n_evaluations_ = res.n_evaluations
        self.n_generations_ = res.n_generations
        self.front_ = res.front
        return self
