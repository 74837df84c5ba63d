"""Maximally diverse collections of small hitting sets, vertex covers and
feedback vertex sets, under total and minimum pairwise Hamming distance."""

from .model import (HypergraphInstance, InstanceError, SimpleGraph, SolutionTuple, canon,
                    div_min, div_total, div_total_by_frequency, hamming_distance,
                    vc_as_hitting_set)
from .solvers import (DiverseQuery, DiverseResult, check_target, solve,
                      solve_diverse_fvs, solve_diverse_hitting_set, solve_min_diverse_fvs,
                      solve_min_diverse_hitting_set)

__version__ = "0.1.0"
