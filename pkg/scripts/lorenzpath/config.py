#!/usr/bin/env python3
"""
Configuration

Purpose: shared defaults and option sets for search, oracle and generators
"""

from dataclasses import dataclass
from enum import Enum


class HeuristicKind(str, Enum):
    """Heuristic sets available to the label search."""
    ZERO = "zero"
    ARC = "arc"
    IDEAL = "ideal"


class SearchMode(str, Enum):
    """What the label search returns."""
    LORENZ = "lorenz"
    PARETO = "pareto"
    OWA = "owa"


# Oracle path cap; exceeding it is an error, never a truncation
DEFAULT_MAX_PATHS = 1_000_000

# Stage count for hansen / antilorenz (2^p paths)
MAX_STAGES = 20

DEFAULT_CONFIG = {
    "random_min_nodes": 2,
    "random_max_nodes": 10_000,
    "random_cost_bounds": (1, 99),
    "random_max_scenarios": 16,
}


@dataclass(frozen=True)
class SearchOptions:
    """
    Switches for one label search run.

    Turning both pruning rules off must not change the solution set, only
    the statistics; rule 2 can only be disabled on acyclic graphs.
    """
    prune_solutions: bool = True
    prune_same_node: bool = True
    sum_bound_fast_path: bool = True
    trace: bool = False
