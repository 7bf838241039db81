#!/usr/bin/env python3
"""
Run reports: the JSON documents the CLI writes to stdout.

Keys are sorted and numbers are ints or exact strings, so identical inputs
give identical bytes apart from `wall_time`.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any, Optional

from .dominance import lorenz_vector
from .hashing import calculate_file_hash, graph_digest
from .model import Path, ScenarioGraph, validate_graph
from .owa import OwaWeights, format_rational, owa_value
from .search import PruneEvent, SearchResult, Solution


@dataclass
class RunReport:
    command: str
    arguments: dict[str, Any]
    graph: Optional[dict[str, Any]] = None
    mode: Optional[str] = None
    solutions: list[dict[str, Any]] = field(default_factory=list)
    statistics: Optional[dict[str, Any]] = None
    trace: Optional[list[str]] = None
    wall_time: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "command": {"name": self.command, "arguments": self.arguments},
            "graph": self.graph,
            "mode": self.mode,
            "solutions": self.solutions,
            "statistics": self.statistics,
            "wall_time": f"{self.wall_time:.6f}",
        }
        if self.trace is not None:
            document["trace"] = self.trace
        document.update(self.extra)
        return document

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def add_search(self, result: SearchResult) -> "RunReport":
        """Fill mode, solutions, statistics, trace and prune events from a search run."""
        self.mode = result.mode.value
        self.solutions = [solution_record(s) for s in result.solutions]
        self.statistics = result.statistics.as_dict()
        if result.trace is not None:
            self.trace = [row.format() for row in result.trace]
        if result.pruned is not None:
            self.extra["pruned"] = [prune_record(event) for event in result.pruned]
        return self


def graph_metadata(graph: ScenarioGraph, meta: dict[str, Any], file: Optional[FsPath] = None) -> dict[str, Any]:
    report = validate_graph(graph)
    return {
        "file": str(file) if file else None,
        "file_sha256": calculate_file_hash(file) if file else None,
        "digest": graph_digest(graph),
        "scenarios": graph.scenario_count,
        "nodes": len(graph.nodes),
        "arcs": len(graph.arcs),
        "source": graph.source,
        "goals": list(graph.goals),
        "strictly_positive": report.strictly_positive,
        "is_dag": report.is_dag,
        "meta": meta,
    }


def path_record(path: Path, weights: Optional[OwaWeights] = None) -> dict[str, Any]:
    record: dict[str, Any] = {
        "nodes": list(path.nodes),
        "arcs": [arc.index for arc in path.arcs],
        "cost": list(path.cost),
        "lorenz": list(lorenz_vector(path.cost)),
    }
    if weights is not None:
        record["value"] = format_rational(owa_value(path.cost, weights))
    return record


def solution_record(solution: Solution) -> dict[str, Any]:
    record = path_record(solution.path)
    if solution.value is not None:
        record["value"] = format_rational(solution.value)
    return record


def prune_record(event: PruneEvent) -> dict[str, Any]:
    return {
        "node": event.node,
        "g": list(event.g),
        "lorenz": list(event.lorenz),
        "rule": event.rule.value,
        "against": list(event.against) if event.against is not None else None,
        "bound": format_rational(event.bound) if event.bound is not None else None,
    }
