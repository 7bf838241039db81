#!/usr/bin/env python3
"""
Search

Purpose: label-expanding best-first search for Lorenz-non-dominated paths,
with a Pareto baseline mode and an OWA mode returning one optimal path

Notes:
    - the search expands labels (one per partial path), not nodes
    - a label's evaluation set is {g + h : h in H(n)}; its priority f is the
      lexicographically smallest Lorenz vector of that set (OWA mode: the
      smallest phi value, ties on the Lorenz vector)
    - rule 1 prunes a label once every member of its evaluation set is
      Lorenz-dominated by (or equal to) a detected solution
    - rule 2 prunes a label whose g is Pareto-dominated by (or equal to) a
      stored label at the same node; stored sets stay Pareto-minimal
    - cyclic graphs are searched only when every arc cost is strictly positive
"""

import heapq
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence

import networkx as nx
from loguru import logger

from .config import HeuristicKind, SearchMode, SearchOptions
from .dominance import LorenzVector, lorenz_vector, pareto_filter
from .exceptions import CyclicGraphError, DimensionError
from .logging import log_execution_time
from .model import (
    Arc,
    CostVector,
    Label,
    LabelStatus,
    Path,
    ScenarioGraph,
    ValidationReport,
    add_costs,
    label_path,
    require_valid,
    zero_vector,
)
from .owa import OwaWeights, format_rational, phi_of_lorenz


@dataclass(frozen=True)
class HeuristicTable:
    """
    Heuristic set H(n) per node.

    A node mapped to an empty set cannot reach a goal; no label is ever
    created there.
    """
    kind: HeuristicKind
    table: Mapping[str, tuple[CostVector, ...]]

    def __getitem__(self, node: str) -> tuple[CostVector, ...]:
        return self.table.get(node, ())

    def is_dead_end(self, node: str) -> bool:
        return not self.table.get(node)


def _ideal_point_table(graph: ScenarioGraph) -> dict[str, tuple[CostVector, ...]]:
    """One backward Dijkstra sweep per scenario from the goal set."""
    reverse = graph.to_networkx().reverse(copy=True)
    sweeps = []
    for scenario in range(graph.scenario_count):
        # parallel arcs: keep the cheapest in this scenario
        def weight(u: str, v: str, edges: dict, s: int = scenario) -> int:
            return min(attrs["cost"][s] for attrs in edges.values())

        sweeps.append(nx.multi_source_dijkstra_path_length(reverse, set(graph.goals), weight=weight))

    table: dict[str, tuple[CostVector, ...]] = {}
    for node in graph.nodes:
        if node in sweeps[0]:
            table[node] = (tuple(int(sweep[node]) for sweep in sweeps),)
        else:
            logger.warning("Node {node} cannot reach a goal; it is a dead end", node=node)
            table[node] = ()
    return table


@log_execution_time
def build_heuristic(graph: ScenarioGraph, kind: HeuristicKind) -> HeuristicTable:
    """
    Build an admissible heuristic table.

    zero:  H(n) = {0}
    arc:   Pareto-non-dominated costs of the arcs leaving n ({0} at goals)
    ideal: the per-scenario shortest distances from n to the nearest goal
    """
    require_valid(graph)
    kind = HeuristicKind(kind)
    zero = zero_vector(graph.scenario_count)

    if kind is HeuristicKind.ZERO:
        table = {node: (zero,) for node in graph.nodes}
    elif kind is HeuristicKind.ARC:
        table = {
            node: (zero,) if graph.is_goal(node)
            else tuple(pareto_filter([arc.cost for arc in graph.outgoing[node]]))
            for node in graph.nodes
        }
    else:
        table = _ideal_point_table(graph)

    logger.debug("Built {kind} heuristic for {count} nodes", kind=kind.value, count=len(table))
    return HeuristicTable(kind, table)


@dataclass(frozen=True)
class Solution:
    path: Path
    cost: CostVector
    lorenz: LorenzVector
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class TraceRow:
    """One expanded label: node, accumulated cost g and the evaluation L(f)."""
    node: str
    g: CostVector
    lorenz: LorenzVector
    value: Optional[Fraction] = None

    def format(self) -> str:
        g = ",".join(map(str, self.g))
        f = ",".join(map(str, self.lorenz))
        return f"{self.node}\tg=[{g}]\tL(f)=[{f}]"


class PruneRule(str, Enum):
    SOLUTION = "rule1"
    SAME_NODE = "rule2"


@dataclass(frozen=True)
class PruneEvent:
    """
    A pruned label.

    `against` is the detected solution's Lorenz vector (rule 1) or the
    dominating g at the same node (rule 2); `bound` is the OWA incumbent.
    """
    node: str
    g: CostVector
    lorenz: LorenzVector
    rule: PruneRule
    against: Optional[tuple[int, ...]] = None
    bound: Optional[Fraction] = None


@dataclass
class SearchStatistics:
    labels_created: int = 0
    labels_expanded: int = 0
    pruned_rule1: int = 0
    pruned_rule2: int = 0
    sum_bound_hits: int = 0
    goals_rejected: int = 0
    dead_ends: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(vars(self))


@dataclass
class SearchResult:
    """Solutions in detection order plus run statistics and the optional trace."""
    mode: SearchMode
    solutions: list[Solution]
    statistics: SearchStatistics
    trace: Optional[list[TraceRow]] = None
    pruned: Optional[list[PruneEvent]] = None

    @property
    def best(self) -> Optional[Solution]:
        """The OWA-optimal solution (OWA mode keeps a single incumbent)."""
        return self.solutions[-1] if self.solutions else None

    @property
    def minimax(self) -> Optional[Solution]:
        """First detected solution; its worst-case cost is minimal over all paths."""
        return self.solutions[0] if self.solutions else None

    @property
    def lorenz_set(self) -> set[LorenzVector]:
        return {solution.lorenz for solution in self.solutions}


# (cost vector, Lorenz vector) of one member of a label's evaluation set
_Member = tuple[CostVector, LorenzVector]


def check_searchable(graph: ScenarioGraph, options: SearchOptions = SearchOptions()) -> ValidationReport:
    """
    Validate a graph and refuse cyclic graphs the search cannot finish.

    Raises:
        GraphValidationError: on structural violations
        CyclicGraphError: cyclic graph with a zero cost component, or with
            same-node pruning disabled
    """
    report = require_valid(graph)
    if not report.is_dag:
        if not report.strictly_positive:
            raise CyclicGraphError("cyclic graph with a zero-cost arc component; such graphs must be acyclic")
        if not options.prune_same_node:
            raise CyclicGraphError("same-node pruning can only be disabled on acyclic graphs")
    return report


class LabelSearch:
    """
    One search run over an immutable graph.

    Runs are strictly sequential; the trace order is part of the result.
    """

    def __init__(
        self,
        graph: ScenarioGraph,
        heuristic: HeuristicTable,
        mode: SearchMode = SearchMode.LORENZ,
        weights: Optional[OwaWeights] = None,
        options: SearchOptions = SearchOptions(),
    ):
        check_searchable(graph, options)
        self.mode = SearchMode(mode)
        if self.mode is SearchMode.OWA:
            if weights is None:
                raise DimensionError("OWA mode needs weights")
            if weights.m != graph.scenario_count:
                raise DimensionError(
                    f"weights have {weights.m} components, graph has {graph.scenario_count} scenarios"
                )
        for node, vectors in heuristic.table.items():
            if any(len(h) != graph.scenario_count for h in vectors):
                raise DimensionError(f"heuristic vector at {node} does not have {graph.scenario_count} components")

        self.graph = graph
        self.heuristic = heuristic
        self.weights = weights
        self.options = options
        self.m = graph.scenario_count

        self.labels: list[Label] = []
        self.solutions: list[Solution] = []
        self.stats = SearchStatistics()
        self.trace: Optional[list[TraceRow]] = [] if options.trace else None
        self.pruned: Optional[list[PruneEvent]] = [] if options.trace else None

        self._open: list[tuple[Any, int, int]] = []
        self._pending: dict[int, list[_Member]] = {}
        self._checked: dict[int, int] = {}
        self._store: dict[str, list[int]] = {}
        self._incumbent: Optional[Fraction] = None

    # rule 1

    def _member_dominated(self, member: _Member, solutions: Sequence[Solution]) -> bool:
        cost, lorenz = member
        total = sum(cost)
        for solution in solutions:
            if self.options.sum_bound_fast_path and total > self.m * solution.lorenz[0]:
                self.stats.sum_bound_hits += 1
                return True
            if all(a <= b for a, b in zip(solution.lorenz, lorenz)):
                return True
        return False

    def _survives_solutions(self, label: Label) -> bool:
        """Drop evaluation members dominated by solutions found since the last check."""
        start = self._checked[label.id]
        if start < len(self.solutions):
            fresh = self.solutions[start:]
            pending = self._pending[label.id]
            pending[:] = [member for member in pending if not self._member_dominated(member, fresh)]
            self._checked[label.id] = len(self.solutions)
        return bool(self._pending[label.id])

    def _passes_bound(self, label: Label) -> bool:
        if not self.options.prune_solutions:
            return True
        if self.mode is SearchMode.LORENZ:
            return self._survives_solutions(label)
        if self.mode is SearchMode.OWA:
            return self._incumbent is None or label.value < self._incumbent
        return True

    # rule 2

    def _admit_same_node(self, label: Label) -> Optional[CostVector]:
        """Insert label into its node's Pareto-minimal store; returns the dominating g if rejected."""
        stored = self._store.setdefault(label.node, [])
        g = label.g
        for other_id in stored:
            other = self.labels[other_id].g
            if all(a <= b for a, b in zip(other, g)):
                return other

        survivors = []
        for other_id in stored:
            other = self.labels[other_id]
            if all(a <= b for a, b in zip(g, other.g)):
                if other.status is LabelStatus.OPEN:
                    self._prune(other, PruneRule.SAME_NODE, against=g)
                continue
            survivors.append(other_id)
        survivors.append(label.id)
        self._store[label.node] = survivors
        return None

    def _prune(self, label: Label, rule: PruneRule, against: Optional[tuple[int, ...]] = None) -> None:
        label.status = LabelStatus.PRUNED
        if rule is PruneRule.SOLUTION:
            self.stats.pruned_rule1 += 1
            if against is None and self.mode is SearchMode.LORENZ:
                against = next(
                    (s.lorenz for s in self.solutions
                     if all(a <= b for a, b in zip(s.lorenz, label.f_lorenz))),
                    None,
                )
        else:
            self.stats.pruned_rule2 += 1
        logger.debug(
            "prune #{id} {node} g={g} by {rule}",
            id=label.id, node=label.node, g=label.g, rule=rule,
        )
        if self.pruned is not None:
            bound = self._incumbent if self.mode is SearchMode.OWA and rule is PruneRule.SOLUTION else None
            self.pruned.append(PruneEvent(label.node, label.g, label.f_lorenz, rule, against, bound))

    # labels

    def _push(self, node: str, g: CostVector, predecessor: Optional[int], arc: Optional[Arc]) -> None:
        vectors = self.heuristic[node]
        if not vectors:
            self.stats.dead_ends += 1
            return

        members = [(cost, lorenz_vector(cost)) for cost in (add_costs(g, h) for h in vectors)]
        value: Optional[Fraction] = None
        if self.mode is SearchMode.OWA:
            assert self.weights is not None
            value, f = min((phi_of_lorenz(lorenz, self.weights), lorenz) for _, lorenz in members)
            key: tuple[Any, ...] = (value, f)
        else:
            f = min(lorenz for _, lorenz in members)
            key = (f,)

        label = Label(len(self.labels), node, g, f, predecessor, arc, value=value)
        self.labels.append(label)
        self.stats.labels_created += 1
        self._pending[label.id] = members
        self._checked[label.id] = 0

        if not self._passes_bound(label):
            self._prune(label, PruneRule.SOLUTION)
            return
        if self.options.prune_same_node:
            dominating = self._admit_same_node(label)
            if dominating is not None:
                self._prune(label, PruneRule.SAME_NODE, against=dominating)
                return

        heapq.heappush(self._open, (key, self.graph.node_order[node], label.id))

    def _accept_goal(self, label: Label) -> None:
        lorenz = lorenz_vector(label.g)
        if self.mode is SearchMode.LORENZ:
            if any(all(a <= b for a, b in zip(s.lorenz, lorenz)) for s in self.solutions):
                self.stats.goals_rejected += 1
                return
        elif self.mode is SearchMode.PARETO:
            if any(all(a <= b for a, b in zip(s.cost, label.g)) for s in self.solutions):
                self.stats.goals_rejected += 1
                return

        path = label_path(self.graph, self.labels, label)
        if self.mode is SearchMode.OWA:
            assert self.weights is not None
            value = phi_of_lorenz(lorenz, self.weights)
            if self._incumbent is not None and value >= self._incumbent:
                self.stats.goals_rejected += 1
                return
            self._incumbent = value
            self.solutions[:] = [Solution(path, label.g, lorenz, value)]
            logger.debug("incumbent {nodes} value={value}", nodes=path.nodes, value=format_rational(value))
            return

        self.solutions.append(Solution(path, label.g, lorenz))
        logger.debug("solution {nodes} cost={cost} L={lorenz}", nodes=path.nodes, cost=label.g, lorenz=lorenz)

    def _stop_on_incumbent(self, label: Label) -> None:
        """Everything still open is valued no better than the incumbent."""
        self._prune(label, PruneRule.SOLUTION)
        for _, _, other_id in sorted(self._open):
            other = self.labels[other_id]
            if other.status is LabelStatus.OPEN:
                self._prune(other, PruneRule.SOLUTION)
        self._open.clear()

    def run(self) -> SearchResult:
        self._push(self.graph.source, zero_vector(self.m), None, None)

        while self._open:
            _, _, label_id = heapq.heappop(self._open)
            label = self.labels[label_id]
            if label.status is not LabelStatus.OPEN:
                continue

            if self.mode is SearchMode.OWA and self._incumbent is not None and label.value >= self._incumbent:
                self._stop_on_incumbent(label)
                break
            if not self._passes_bound(label):
                self._prune(label, PruneRule.SOLUTION)
                continue

            label.status = LabelStatus.EXPANDED
            self.stats.labels_expanded += 1
            if self.trace is not None:
                self.trace.append(TraceRow(label.node, label.g, label.f_lorenz, label.value))
            logger.debug(
                "expand #{id} {node} g={g} L(f)={f}",
                id=label.id, node=label.node, g=label.g, f=label.f_lorenz,
            )

            if self.graph.is_goal(label.node):
                self._accept_goal(label)
            for arc in self.graph.outgoing[label.node]:
                self._push(arc.head, add_costs(label.g, arc.cost), label.id, arc)

        logger.info(
            "{mode} search: {solutions} solution(s), {created} labels created, {expanded} expanded",
            mode=self.mode.value,
            solutions=len(self.solutions),
            created=self.stats.labels_created,
            expanded=self.stats.labels_expanded,
        )
        return SearchResult(self.mode, list(self.solutions), self.stats, self.trace, self.pruned)


def _options(options: Optional[SearchOptions], trace: bool) -> SearchOptions:
    base = options or SearchOptions()
    return replace(base, trace=trace or base.trace)


def search_lorenz(
    graph: ScenarioGraph,
    heuristic: HeuristicTable,
    trace: bool = False,
    options: Optional[SearchOptions] = None,
) -> SearchResult:
    """One path per Lorenz-non-dominated Lorenz vector, in lex-increasing order."""
    return LabelSearch(graph, heuristic, SearchMode.LORENZ, options=_options(options, trace)).run()


def search_pareto(
    graph: ScenarioGraph,
    heuristic: HeuristicTable,
    trace: bool = False,
    options: Optional[SearchOptions] = None,
) -> SearchResult:
    """Pareto frontier baseline: the same engine without rule 1, Pareto-filtered at goals."""
    return LabelSearch(graph, heuristic, SearchMode.PARETO, options=_options(options, trace)).run()


def search_owa(
    graph: ScenarioGraph,
    weights: OwaWeights,
    heuristic: HeuristicTable,
    trace: bool = False,
    options: Optional[SearchOptions] = None,
) -> SearchResult:
    """A path minimising the OWA value; `result.best` is None when no goal is reachable."""
    return LabelSearch(graph, heuristic, SearchMode.OWA, weights, _options(options, trace)).run()


def run_search(
    graph: ScenarioGraph,
    mode: SearchMode,
    heuristic: HeuristicTable,
    weights: Optional[OwaWeights] = None,
    trace: bool = False,
    options: Optional[SearchOptions] = None,
) -> SearchResult:
    """Dispatch on the search mode."""
    mode = SearchMode(mode)
    if mode is SearchMode.OWA:
        if weights is None:
            raise DimensionError("OWA mode needs weights")
        return search_owa(graph, weights, heuristic, trace, options)
    if mode is SearchMode.PARETO:
        return search_pareto(graph, heuristic, trace, options)
    return search_lorenz(graph, heuristic, trace, options)
