"""Bi-objective quadratic minimum spanning trees under rough fuzzy costs.

Edge and edge-pair costs are rough fuzzy variables. Each objective is the
smallest bound that holds at credibility ``beta`` for trust ``alpha``; the
resulting deterministic bi-objective problem is solved exactly on small
graphs and with NSGA-II or MOCHC otherwise.
"""

from .core import EvalContext, ObjectivePair, evaluate, evaluate_many, is_spanning_tree, repair
from .exact import ExactSolver, exact_pareto_front, kirchhoff_count
from .instance import Instance, generate_random, paper_instance, parse_instance, read_instance
from .metrics import Front, indicator_values
from .moea import MOCHC, NSGA2
from .uncertainty import ConfidenceLevels, RoughFuzzyWeight, TriangularFuzzy, chance_reduce

__version__ = "0.1.0"

__all__ = [
    "EvalContext",
    "ObjectivePair",
    "evaluate",
    "evaluate_many",
    "is_spanning_tree",
    "repair",
    "ExactSolver",
    "exact_pareto_front",
    "kirchhoff_count",
    "Instance",
    "generate_random",
    "paper_instance",
    "parse_instance",
    "read_instance",
    "Front",
    "indicator_values",
    "NSGA2",
    "MOCHC",
    "ConfidenceLevels",
    "RoughFuzzyWeight",
    "TriangularFuzzy",
    "chance_reduce",
]
