"""Multi-objective evolutionary solvers: NSGA-II and MOCHC."""

from ._base import Individual
from .mochc import MOCHC, MochcParams, initial_threshold, mochc_run
from .nsga2 import NSGA2, NsgaParams, nsga2_run
from .operators import binary_tournament, bit_flip, hamming, hux, single_point_crossover
from .sorting import (crowding_distance, fast_nondominated_sort, rank_and_crowding, select_best,
    select_best_distinct)

__all__ = [
    "Individual",
    "NSGA2",
    "NsgaParams",
    "nsga2_run",
    "MOCHC",
    "MochcParams",
    "mochc_run",
    "initial_threshold",
    "hux",
    "hamming",
    "single_point_crossover",
    "bit_flip",
    "binary_tournament",
    "fast_nondominated_sort",
    "crowding_distance",
    "rank_and_crowding",
    "select_best",
    "select_best_distinct",
]
