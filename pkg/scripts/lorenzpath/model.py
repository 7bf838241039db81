#!/usr/bin/env python3
"""
Model

Purpose: scenario graphs, paths and search labels, plus the JSON graph format

Notes:
    - costs are non-negative integers (scaled fixed-point); users scale real costs before input
    - node and arc iteration follows input order so searches are deterministic
    - parallel arcs between the same pair of nodes are allowed
"""

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from pathlib import Path as FsPath
from typing import Any, Iterable, Mapping, Optional, Sequence

import networkx as nx
from loguru import logger

from .exceptions import FileAccessError, GraphValidationError, PathError

CostVector = tuple[int, ...]

GRAPH_KEYS = ("scenarios", "nodes", "source", "goals", "arcs")
ARC_KEYS = ("from", "to", "cost")
META_KEY = "meta"


def zero_vector(m: int) -> CostVector:
    return (0,) * m


def add_costs(x: CostVector, y: CostVector) -> CostVector:
    """Componentwise sum; callers guarantee equal lengths."""
    return tuple(a + b for a, b in zip(x, y))


@dataclass(frozen=True)
class Arc:
    """One directed arc; `index` is its position in the graph's input order."""
    tail: str
    head: str
    cost: CostVector
    index: int


@dataclass(frozen=True)
class ScenarioGraph:
    """
    Directed graph whose arcs carry one cost per scenario.

    Instances are immutable; derived views (adjacency, node order, flags) are
    computed once on first use.
    """
    scenario_count: int
    nodes: tuple[str, ...]
    source: str
    goals: tuple[str, ...]
    arcs: tuple[Arc, ...]

    @classmethod
    def build(
        cls,
        scenario_count: int,
        nodes: Iterable[str],
        source: str,
        goals: Iterable[str],
        arcs: Iterable[tuple[str, str, Sequence[int]]],
    ) -> "ScenarioGraph":
        """Assemble a graph from plain (tail, head, cost) triples."""
        return cls(
            scenario_count=scenario_count,
            nodes=tuple(nodes),
            source=source,
            goals=tuple(goals),
            arcs=tuple(
                Arc(tail, head, tuple(cost), index)
                for index, (tail, head, cost) in enumerate(arcs)
            ),
        )

    @cached_property
    def node_order(self) -> dict[str, int]:
        return {node: position for position, node in enumerate(self.nodes)}

    @cached_property
    def goal_set(self) -> frozenset[str]:
        return frozenset(self.goals)

    @cached_property
    def outgoing(self) -> dict[str, tuple[Arc, ...]]:
        adjacency: dict[str, list[Arc]] = {node: [] for node in self.nodes}
        for arc in self.arcs:
            adjacency.setdefault(arc.tail, []).append(arc)
        return {node: tuple(arcs) for node, arcs in adjacency.items()}

    @cached_property
    def strictly_positive(self) -> bool:
        return all(component > 0 for arc in self.arcs for component in arc.cost)

    @cached_property
    def is_dag(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def is_goal(self, node: str) -> bool:
        return node in self.goal_set

    def to_networkx(self) -> nx.MultiDiGraph:
        """MultiDiGraph view; edge keys are arc indices, `cost` holds the vector."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.nodes)
        for arc in self.arcs:
            graph.add_edge(arc.tail, arc.head, key=arc.index, cost=arc.cost)
        return graph

    def with_source(self, node: str) -> "ScenarioGraph":
        return replace(self, source=node)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_graph; `violations` is empty when ok."""
    violations: tuple[str, ...]
    strictly_positive: bool
    is_dag: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_cost_component(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_graph(graph: ScenarioGraph) -> ValidationReport:
    """
    Check a graph against the structural rules without raising.

    Returns:
        ValidationReport with every violation found, the strictly_positive
        flag and the is_dag flag (False when the arc endpoints are broken)
    """
    violations: list[str] = []
    m = graph.scenario_count

    if not _is_cost_component(m) or m < 1:
        violations.append(f"scenario count: expected an integer >= 1, got {m!r}")

    known = set(graph.nodes)
    if len(known) != len(graph.nodes):
        violations.append("duplicate node identifiers")
    if graph.source not in known:
        violations.append(f"source {graph.source!r} is not a node")
    if not graph.goals:
        violations.append("empty goal set")
    for goal in graph.goals:
        if goal not in known:
            violations.append(f"goal {goal!r} is not a node")

    endpoints_ok = True
    for arc in graph.arcs:
        label = f"arc {arc.index} ({arc.tail}->{arc.head})"
        for endpoint in (arc.tail, arc.head):
            if endpoint not in known:
                endpoints_ok = False
                violations.append(f"bad arc endpoint: {label} references unknown node {endpoint!r}")
        if len(arc.cost) != m:
            violations.append(f"cost arity: {label} has {len(arc.cost)} components, expected {m}")
        if not all(_is_cost_component(c) for c in arc.cost):
            violations.append(f"non-integer cost: {label}")
        elif any(c < 0 for c in arc.cost):
            violations.append(f"negative cost: {label}")

    strictly_positive = all(
        _is_cost_component(c) and c > 0 for arc in graph.arcs for c in arc.cost
    )
    is_dag = endpoints_ok and graph.is_dag

    if violations:
        logger.debug("Graph validation found {count} violation(s)", count=len(violations))
    return ValidationReport(tuple(violations), strictly_positive, is_dag)


def require_valid(graph: ScenarioGraph) -> ValidationReport:
    """validate_graph, raising GraphValidationError on any violation."""
    report = validate_graph(graph)
    if not report.ok:
        raise GraphValidationError(report.violations)
    return report


@dataclass(frozen=True)
class Path:
    """A walk from `source` along `arcs`; `cost` is recomputed from the arcs."""
    source: str
    scenario_count: int
    arcs: tuple[Arc, ...] = ()

    @classmethod
    def from_arcs(cls, graph: ScenarioGraph, arcs: Iterable[Arc]) -> "Path":
        path = cls(graph.source, graph.scenario_count, tuple(arcs))
        path_cost(path)
        return path

    @cached_property
    def cost(self) -> CostVector:
        return path_cost(self)

    @property
    def nodes(self) -> tuple[str, ...]:
        return (self.source,) + tuple(arc.head for arc in self.arcs)

    @property
    def end(self) -> str:
        return self.arcs[-1].head if self.arcs else self.source


def path_cost(path: Path) -> CostVector:
    """
    Componentwise sum of the arc costs of a connected walk.

    Raises:
        PathError: if the arcs do not form a walk starting at the source, or
            an arc cost has the wrong arity
    """
    position = path.source
    total = zero_vector(path.scenario_count)
    for step, arc in enumerate(path.arcs):
        if arc.tail != position:
            raise PathError(
                f"disconnected arc sequence: arc {step} starts at {arc.tail!r}, expected {position!r}"
            )
        if len(arc.cost) != path.scenario_count:
            raise PathError(f"arc {arc.index} has {len(arc.cost)} cost components, expected {path.scenario_count}")
        total = add_costs(total, arc.cost)
        position = arc.head
    return total


class LabelStatus(str, Enum):
    OPEN = "open"
    EXPANDED = "expanded"
    PRUNED = "pruned"


@dataclass(slots=True)
class Label:
    """
    One partial path record of the label search.

    `arc` is the arc connecting the predecessor label to this one (None at the root).
    """
    id: int
    node: str
    g: CostVector
    f_lorenz: tuple[int, ...]
    predecessor: Optional[int] = None
    arc: Optional[Arc] = None
    status: LabelStatus = LabelStatus.OPEN
    value: Any = field(default=None)


def label_path(graph: ScenarioGraph, labels: Sequence[Label], label: Label) -> Path:
    """Follow predecessor ids back to the root and rebuild the path."""
    arcs: list[Arc] = []
    current: Optional[Label] = label
    while current is not None and current.arc is not None:
        arcs.append(current.arc)
        current = labels[current.predecessor] if current.predecessor is not None else None
    arcs.reverse()
    return Path(graph.source, graph.scenario_count, tuple(arcs))


# JSON graph format

def graph_to_dict(graph: ScenarioGraph, meta: Optional[Mapping[str, Any]] = None) -> dict[str, Any]:
    document: dict[str, Any] = {
        "scenarios": graph.scenario_count,
        "nodes": list(graph.nodes),
        "source": graph.source,
        "goals": list(graph.goals),
        "arcs": [
            {"from": arc.tail, "to": arc.head, "cost": list(arc.cost)} for arc in graph.arcs
        ],
    }
    if meta is not None:
        document[META_KEY] = dict(meta)
    return document


def dump_graph(graph: ScenarioGraph, meta: Optional[Mapping[str, Any]] = None) -> str:
    """Canonical JSON text of a graph (fixed key order, two-space indent)."""
    return json.dumps(graph_to_dict(graph, meta), indent=2, ensure_ascii=False) + "\n"


def graph_from_dict(document: Mapping[str, Any]) -> tuple[ScenarioGraph, dict[str, Any]]:
    """
    Parse a graph document; unknown keys and non-integer costs are rejected.

    Returns:
        (validated graph, meta block or an empty dict)

    Raises:
        GraphValidationError: on any format or structural violation
    """
    if not isinstance(document, Mapping):
        raise GraphValidationError(["graph document must be a JSON object"])

    problems: list[str] = []
    unknown = sorted(set(document) - set(GRAPH_KEYS) - {META_KEY})
    if unknown:
        problems.append(f"unknown keys: {', '.join(unknown)}")
    missing = [key for key in GRAPH_KEYS if key not in document]
    if missing:
        problems.append(f"missing keys: {', '.join(missing)}")
    if problems:
        raise GraphValidationError(problems)

    nodes = document["nodes"]
    goals = document["goals"]
    arcs = document["arcs"]
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        problems.append("nodes must be a list of strings")
    if not isinstance(goals, list) or not all(isinstance(g, str) for g in goals):
        problems.append("goals must be a list of strings")
    if not isinstance(document["source"], str):
        problems.append("source must be a string")
    if not isinstance(arcs, list):
        problems.append("arcs must be a list")
    if problems:
        raise GraphValidationError(problems)

    triples: list[tuple[str, str, Sequence[int]]] = []
    for position, entry in enumerate(arcs):
        if not isinstance(entry, Mapping) or set(entry) != set(ARC_KEYS):
            problems.append(f"arc {position}: expected exactly the keys from, to, cost")
            continue
        cost = entry["cost"]
        if not isinstance(cost, list) or not all(_is_cost_component(c) for c in cost):
            problems.append(f"arc {position}: cost must be a list of integers")
            continue
        if not isinstance(entry["from"], str) or not isinstance(entry["to"], str):
            problems.append(f"arc {position}: from and to must be node name strings")
            continue
        triples.append((entry["from"], entry["to"], cost))
    if problems:
        raise GraphValidationError(problems)

    graph = ScenarioGraph.build(document["scenarios"], nodes, document["source"], goals, triples)
    require_valid(graph)
    meta = document.get(META_KEY) or {}
    return graph, dict(meta) if isinstance(meta, Mapping) else {}


def load_graph(path: FsPath) -> tuple[ScenarioGraph, dict[str, Any]]:
    """Read and validate a JSON graph file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileAccessError(f"cannot read graph file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise FileAccessError(f"graph file {path} is not UTF-8 text: {e}") from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileAccessError(f"graph file {path} is not valid JSON: {e}") from e
    graph, meta = graph_from_dict(document)
    logger.info(
        "Loaded graph {path}: {nodes} nodes, {arcs} arcs, m={m}",
        path=str(path),
        nodes=len(graph.nodes),
        arcs=len(graph.arcs),
        m=graph.scenario_count,
    )
    return graph, meta
