#!/usr/bin/env python3
"""
Oracle

Purpose: brute-force ground truth for the searches

Notes:
    - only simple paths are enumerated: with strictly positive costs a path
      containing a cycle is dominated by its reduction (Pareto, Lorenz and
      OWA alike), and graphs with zero costs must be acyclic
    - exceeding the path cap raises, results are never silently truncated
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from loguru import logger

from .config import DEFAULT_MAX_PATHS
from .dominance import (
    LorenzVector,
    lorenz_indices,
    lorenz_vector,
    lorenz_weakly_dominates,
    pareto_indices,
)
from .exceptions import CyclicGraphError, DimensionError, EnumerationLimitError, ValidationError
from .model import CostVector, Path, ScenarioGraph, require_valid
from .owa import OwaWeights, owa_value


@dataclass(frozen=True)
class EnumerationLimits:
    max_paths: int = DEFAULT_MAX_PATHS
    simple_only: bool = True

    def __post_init__(self) -> None:
        if self.max_paths < 1:
            raise ValidationError(f"max_paths must be >= 1, got {self.max_paths}")
        if not self.simple_only:
            raise ValidationError("only simple-path enumeration is supported")


@dataclass(frozen=True)
class DecisionResult:
    """Answer to: is there a path whose cost weakly Lorenz-dominates the target?"""
    holds: bool
    witness: Optional[Path] = None


def enumerate_paths(graph: ScenarioGraph, limits: EnumerationLimits = EnumerationLimits()) -> list[Path]:
    """
    All simple source-to-goal paths in depth-first order over input arc order.

    A path may pass through a goal and continue to another one; the empty
    path is included when the source is a goal.

    Raises:
        CyclicGraphError: cyclic graph with a zero cost component
        EnumerationLimitError: more than limits.max_paths paths
    """
    report = require_valid(graph)
    if not report.is_dag and not report.strictly_positive:
        raise CyclicGraphError("cyclic graph with a zero-cost arc component cannot be enumerated")

    paths: list[Path] = []

    def record(arcs: tuple) -> None:
        if len(paths) >= limits.max_paths:
            raise EnumerationLimitError(f"more than {limits.max_paths} paths; raise --max-paths to continue")
        paths.append(Path(graph.source, graph.scenario_count, arcs))

    # explicit stack of (node, arcs so far, nodes on the path, next arc position)
    if graph.is_goal(graph.source):
        record(())
    stack = [(graph.source, (), frozenset([graph.source]), 0)]
    while stack:
        node, arcs, visited, position = stack.pop()
        outgoing = graph.outgoing[node]
        if position >= len(outgoing):
            continue
        stack.append((node, arcs, visited, position + 1))
        arc = outgoing[position]
        if arc.head in visited:
            continue
        extended = arcs + (arc,)
        if graph.is_goal(arc.head):
            record(extended)
        stack.append((arc.head, extended, visited | {arc.head}, 0))

    logger.debug("Enumerated {count} simple paths", count=len(paths))
    return paths


def completion_frontier(
    graph: ScenarioGraph, node: str, limits: EnumerationLimits = EnumerationLimits()
) -> list[CostVector]:
    """Pareto-non-dominated costs of the simple paths from `node` to a goal."""
    costs = [path.cost for path in enumerate_paths(graph.with_source(node), limits)]
    return [costs[i] for i in pareto_indices(costs)]


def _paths(graph: ScenarioGraph, limits: EnumerationLimits, paths: Optional[Sequence[Path]]) -> Sequence[Path]:
    return enumerate_paths(graph, limits) if paths is None else paths


def brute_pareto_set(
    graph: ScenarioGraph,
    limits: EnumerationLimits = EnumerationLimits(),
    paths: Optional[Sequence[Path]] = None,
) -> list[Path]:
    """One witness path per Pareto-non-dominated cost vector, in enumeration order."""
    paths = _paths(graph, limits, paths)
    return [paths[i] for i in pareto_indices([p.cost for p in paths])]


def brute_lorenz_set(
    graph: ScenarioGraph,
    limits: EnumerationLimits = EnumerationLimits(),
    paths: Optional[Sequence[Path]] = None,
) -> list[tuple[LorenzVector, Path]]:
    """One witness per Lorenz-non-dominated Lorenz vector, in enumeration order."""
    paths = _paths(graph, limits, paths)
    return [(lorenz_vector(paths[i].cost), paths[i]) for i in lorenz_indices([p.cost for p in paths])]


def brute_owa_opt(
    graph: ScenarioGraph,
    weights: OwaWeights,
    limits: EnumerationLimits = EnumerationLimits(),
    paths: Optional[Sequence[Path]] = None,
) -> Optional[tuple[Path, Fraction]]:
    """The OWA-minimal path (first in enumeration order on ties), or None without paths."""
    if weights.m != graph.scenario_count:
        raise DimensionError(f"weights have {weights.m} components, graph has {graph.scenario_count} scenarios")
    best: Optional[tuple[Path, Fraction]] = None
    for path in _paths(graph, limits, paths):
        value = owa_value(path.cost, weights)
        if best is None or value < best[1]:
            best = (path, value)
    return best


def decide_lorenz_dominating_path(
    graph: ScenarioGraph,
    target: Sequence[int],
    limits: EnumerationLimits = EnumerationLimits(),
    paths: Optional[Sequence[Path]] = None,
) -> DecisionResult:
    """
    Exhaustive answer to the (NP-complete) decision problem.

    Weak dominance is used: yes-instances of the partition reduction reach
    the target's Lorenz vector exactly.
    """
    if len(target) != graph.scenario_count:
        raise DimensionError(f"target has {len(target)} components, graph has {graph.scenario_count} scenarios")
    for path in _paths(graph, limits, paths):
        if lorenz_weakly_dominates(path.cost, target):
            return DecisionResult(True, path)
    return DecisionResult(False)
