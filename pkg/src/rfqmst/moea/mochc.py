"""MOCHC: CHC-style search with Pareto ranking and crowding."""

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
    ceil_frac,
    check_prob,
    check_sizes,
    floor_frac,
    genotype_multiset,
    initial_population,
    repair_rows,
)
from .operators import bit_flip, hux
from .sorting import select_best_distinct

__all__ = ["MochcParams", "mochc_run", "MOCHC", "initial_threshold"]


@dataclass(frozen=True)
class MochcParams:
    population: int = 100
    max_evaluations: int = 50_000
    crossover_prob: float = 0.9
    incest_threshold_fraction: float = 0.25
    preserved_fraction: float = 0.05
    cataclysm_prob: float = 0.35

    def __post_init__(self):
        check_sizes(self.population, self.max_evaluations)
        for name in ("crossover_prob", "incest_threshold_fraction", "preserved_fraction",
                     "cataclysm_prob"):
            check_prob(name, getattr(self, name))


def initial_threshold(genome_length: int, fraction: float) -> int:
    return floor_frac(fraction, genome_length)


def _offspring(pop: np.ndarray, threshold: int, prob: float, room: int,
               rng: np.random.Generator) -> np.ndarray:
    perm = rng.permutation(len(pop))
    a, b = perm[0:len(perm) - 1:2], perm[1::2]
    dist = np.count_nonzero(pop[a] != pop[b], axis=1)
    kids = []
    for i, j, d in zip(a, b, dist):
        if len(kids) >= room:
            break
        if d > threshold and rng.random() < prob:
            kids.extend(hux(pop[i], pop[j], rng))
    return np.array(kids[:room], dtype=bool).reshape(-1, pop.shape[1])


def _run(ctx: EvalContext, params: MochcParams, rng: np.random.Generator,
         observer: Observer | None = None) -> RunResult:
    N = params.population
    m = ctx.instance.edge_count
    start = initial_threshold(m, params.incest_threshold_fraction)
    n_keep = ceil_frac(params.preserved_fraction, N)
    evaluate = Evaluator(ctx, params.max_evaluations, observer)

    pop = initial_population(ctx, N, rng)
    obj = evaluate(pop)
    threshold = start
    generations = restarts = 0
    while evaluate.remaining > 0:
        kids = _offspring(pop, threshold, params.crossover_prob, evaluate.remaining, rng)
        before = genotype_multiset(pop)
        if len(kids):
            kids = repair_rows(ctx, kids, rng)
            kid_obj = evaluate(kids)
            merged = np.vstack((pop, kids))
            merged_obj = np.vstack((obj, kid_obj))
            keep = select_best_distinct(merged, merged_obj, N)
            pop, obj = merged[keep], merged_obj[keep]
        generations += 1
        if genotype_multiset(pop) == before:
            threshold -= 1
        if threshold > 0 or evaluate.remaining == 0:
            continue

        # cataclysm: keep the elite, scramble the rest in place
        order = select_best_distinct(pop, obj, N)
        victims = order[n_keep:][: evaluate.remaining]
        if not len(victims):
            break
        pop = pop.copy()
        obj = obj.copy()
        pop[victims] = repair_rows(ctx, bit_flip(pop[victims], params.cataclysm_prob, rng), rng)
        obj[victims] = evaluate(pop[victims])
        threshold = start
        restarts += 1
    return RunResult(pop, obj, evaluate.used, generations, restarts)


def mochc_run(ctx: EvalContext, params: MochcParams, rng: np.random.Generator) -> Front:
    """Final population's nondominated set, genotypes attached."""
    return _run(ctx, params, rng).front


class MOCHC(PopulationMixin, BaseEstimator):
    """Multi-objective CHC.

    Random pairing with incest prevention on Hamming distance, HUX
    crossover, and parent-offspring survival by rank then crowding, where a
    repeated genotype only takes a slot once the distinct ones run out. When the
    population stops changing the incest threshold decays; at zero the
    population is restarted around a small elite by heavy bit-flip mutation.

    Attributes
    ----------
    front_ : Front
    population_, objectives_ : ndarray
    n_evaluations_, n_generations_, n_restarts_ : int
    """

    def __init__(self, population=100, max_evaluations=50_000, crossover_prob=0.9,
                 incest_threshold_fraction=0.25, preserved_fraction=0.05, cataclysm_prob=0.35,
                 random_state=None):
        self.population = population
        self.max_evaluations = max_evaluations
        self.crossover_prob = crossover_prob
        self.incest_threshold_fraction = incest_threshold_fraction
        self.preserved_fraction = preserved_fraction
        self.cataclysm_prob = cataclysm_prob
        self.random_state = random_state

    def _params(self) -> MochcParams:
        return MochcParams(self.population, self.max_evaluations, self.crossover_prob,
                           self.incest_threshold_fraction, self.preserved_fraction,
                           self.cataclysm_prob)

    def fit(self, ctx: EvalContext, y=None, observer: Observer | None = None):
        res = _run(ctx, self._params(), np.random.default_rng(self.random_state), observer)
        self.population_ = res.population
        self.objectives_ = res.objectives
        self.n_evaluations_ = res.n_evaluations
        self.n_generations_ = res.n_generations
        self.n_restarts_ = res.n_restarts
        self.front_ = res.front
        return self
