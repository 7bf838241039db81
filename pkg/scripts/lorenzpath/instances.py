#!/usr/bin/env python3
"""
Instances

Purpose: the worked example graph, the pathological families and seeded random DAGs

Notes:
    - the staged families only promise their path-cost sets, not a particular drawing
    - every generator can attach a meta block (family, parameters, closed-form
      expectations); the graph parser ignores it
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Sequence

import numpy as np
from loguru import logger

from .config import DEFAULT_CONFIG, MAX_STAGES
from .exceptions import GeneratorError
from .model import CostVector, ScenarioGraph

GAMMA1 = "γ1"
GAMMA2 = "γ2"

# Arc costs of the worked example, reconstructed from its path-cost table and
# search trace. One path of the table (a,b,d,γ2) is printed as (12,11) but
# these arcs give (9,11); the Lorenz frontier is the same either way.
FIGURE1_ARCS: tuple[tuple[str, str, tuple[int, int]], ...] = (
    ("a", "b", (5, 3)),
    ("a", "c", (10, 4)),
    ("a", "d", (2, 6)),
    ("b", GAMMA1, (4, 6)),
    ("b", "c", (4, 2)),
    ("b", "d", (1, 3)),
    ("d", "c", (1, 4)),
    ("d", GAMMA2, (3, 5)),
    ("c", GAMMA1, (3, 1)),
    ("c", GAMMA2, (1, 2)),
)


class Family(str, Enum):
    FIGURE1 = "figure1"
    HANSEN = "hansen"
    ANTILORENZ = "antilorenz"
    PARTITION = "partition"
    RANDOM = "random"


def _check_stages(p: int) -> None:
    if not isinstance(p, int) or not 1 <= p <= MAX_STAGES:
        raise GeneratorError(f"stage count p must be within 1..{MAX_STAGES}, got {p!r}")


def figure1() -> ScenarioGraph:
    """Two-scenario example graph from a to the goals γ1 and γ2."""
    return ScenarioGraph.build(2, ["a", "b", "c", "d", GAMMA1, GAMMA2], "a", [GAMMA1, GAMMA2], FIGURE1_ARCS)


def _stage_nodes(p: int) -> list[str]:
    return [f"s{i}" for i in range(p + 1)]


def hansen(p: int) -> ScenarioGraph:
    """
    p-stage chain whose path costs are {(x, 2^p - 1 - x)}.

    Every path is Pareto-non-dominated, yet they all share the total 2^p - 1
    and only the most balanced pair forms the single Lorenz class.
    """
    _check_stages(p)
    nodes = _stage_nodes(p)
    arcs = []
    for i in range(1, p + 1):
        step = 2 ** (i - 1)
        arcs.append((nodes[i - 1], nodes[i], (step, 0)))
        arcs.append((nodes[i - 1], nodes[i], (0, step)))
    return ScenarioGraph.build(2, nodes, nodes[0], [nodes[-1]], arcs)


def antilorenz(p: int) -> ScenarioGraph:
    """
    Instance where all 2^p paths are Lorenz-non-dominated.

    Path costs are {(2x, 3 * 2^p - x)}; the arcs carry zero components, so
    the graph must stay acyclic.
    """
    _check_stages(p)
    nodes = _stage_nodes(p) + ["t"]
    arcs = []
    for i in range(1, p + 1):
        arcs.append((nodes[i - 1], nodes[i], (2 ** i, 0)))
        arcs.append((nodes[i - 1], nodes[i], (0, 2 ** (i - 1))))
    arcs.append((nodes[p], "t", (0, 2 ** (p + 1) + 1)))
    return ScenarioGraph.build(2, nodes, nodes[0], ["t"], arcs)


@dataclass(frozen=True)
class PartitionInstance:
    """
    Partition reduction: a path L-dominates `target` iff the sizes split evenly.

    `scale` is 2 when the original total was odd and the sizes were doubled.
    """
    graph: ScenarioGraph
    target: CostVector
    sizes: tuple[int, ...]
    scale: int = 1


def partition_reduction(sizes: Sequence[int]) -> PartitionInstance:
    """One stage per item offering (s, 0) or (0, s); target (S/2, S/2)."""
    if not sizes or any(not isinstance(s, int) or s < 1 for s in sizes):
        raise GeneratorError(f"sizes must be a non-empty list of positive integers, got {list(sizes)!r}")
    scale = 1 if sum(sizes) % 2 == 0 else 2
    if scale == 2:
        logger.warning("Partition total {total} is odd; doubling every size", total=sum(sizes))
    scaled = tuple(s * scale for s in sizes)

    nodes = _stage_nodes(len(scaled))
    arcs = []
    for i, size in enumerate(scaled, start=1):
        arcs.append((nodes[i - 1], nodes[i], (size, 0)))
        arcs.append((nodes[i - 1], nodes[i], (0, size)))
    half = sum(scaled) // 2
    graph = ScenarioGraph.build(2, nodes, nodes[0], [nodes[-1]], arcs)
    return PartitionInstance(graph, (half, half), tuple(sizes), scale)


def _check_random(nodes: int, arc_density: float, cost_range: Sequence[int], m: int) -> None:
    low_bound, high_bound = DEFAULT_CONFIG["random_cost_bounds"]
    if not DEFAULT_CONFIG["random_min_nodes"] <= nodes <= DEFAULT_CONFIG["random_max_nodes"]:
        raise GeneratorError(f"nodes must be within 2..{DEFAULT_CONFIG['random_max_nodes']}, got {nodes}")
    if not 0 < arc_density <= 1:
        raise GeneratorError(f"arc density must be in (0, 1], got {arc_density}")
    if len(cost_range) != 2 or not low_bound <= cost_range[0] <= cost_range[1] <= high_bound:
        raise GeneratorError(f"cost range must satisfy {low_bound} <= low <= high <= {high_bound}, got {tuple(cost_range)}")
    if not 1 <= m <= DEFAULT_CONFIG["random_max_scenarios"]:
        raise GeneratorError(f"scenario count must be within 1..{DEFAULT_CONFIG['random_max_scenarios']}, got {m}")


def random_graph(
    nodes: int,
    arc_density: float,
    cost_range: Sequence[int],
    m: int,
    seed: int,
) -> ScenarioGraph:
    """
    Seeded layered DAG: source n0, goals = the last layer.

    Every non-source node gets an arc from the previous layer and every node
    outside the last layer an arc into the next one, so all nodes lie on
    some source-to-goal path. Same seed, same graph.
    """
    _check_random(nodes, arc_density, cost_range, m)
    rng = np.random.default_rng(seed)
    names = [f"n{k}" for k in range(nodes)]
    depth = max(1, round(math.sqrt(nodes - 1)))
    layer = [0] + [1 + (k - 1) * depth // (nodes - 1) for k in range(1, nodes)]
    by_layer: dict[int, list[int]] = {}
    for k, level in enumerate(layer):
        by_layer.setdefault(level, []).append(k)

    pairs = set()
    for u in range(nodes):
        for v in range(nodes):
            if layer[v] > layer[u] and rng.random() < arc_density:
                pairs.add((u, v))
    for v in range(1, nodes):
        if not any((u, v) in pairs for u in by_layer[layer[v] - 1]):
            pairs.add((int(rng.choice(by_layer[layer[v] - 1])), v))
    for u in range(nodes):
        if layer[u] < depth and not any((u, v) in pairs for v in by_layer[layer[u] + 1]):
            pairs.add((u, int(rng.choice(by_layer[layer[u] + 1]))))

    low, high = cost_range
    arcs = [
        (names[u], names[v], tuple(int(c) for c in rng.integers(low, high + 1, size=m)))
        for u, v in sorted(pairs)
    ]
    goals = [names[k] for k in by_layer[depth]]
    return ScenarioGraph.build(m, names, names[0], goals, arcs)


def with_back_arcs(
    graph: ScenarioGraph, count: int, seed: int, cost_range: Sequence[int] = (1, 9)
) -> ScenarioGraph:
    """Add `count` strictly positive arcs pointing back to earlier nodes (cycles)."""
    low, high = cost_range
    if count < 0 or low < 1 or high < low:
        raise GeneratorError("back arcs need count >= 0 and a strictly positive cost range")
    rng = np.random.default_rng(seed)
    extra = []
    for _ in range(count):
        u = int(rng.integers(1, len(graph.nodes)))
        v = int(rng.integers(0, u))
        cost = tuple(int(c) for c in rng.integers(low, high + 1, size=graph.scenario_count))
        extra.append((graph.nodes[u], graph.nodes[v], cost))
    arcs = [(arc.tail, arc.head, arc.cost) for arc in graph.arcs] + extra
    return ScenarioGraph.build(graph.scenario_count, graph.nodes, graph.source, graph.goals, arcs)


@dataclass(frozen=True)
class GeneratorSpec:
    """Family plus its parameters; only the fields of the chosen family are read."""
    family: Family
    p: Optional[int] = None
    sizes: Optional[tuple[int, ...]] = None
    nodes: int = 12
    arc_density: float = 0.5
    cost_range: tuple[int, int] = (1, 9)
    m: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        family = Family(self.family)
        if family in (Family.HANSEN, Family.ANTILORENZ):
            _check_stages(self.p if self.p is not None else 0)
        elif family is Family.PARTITION:
            if not self.sizes:
                raise GeneratorError("partition needs a non-empty size list")
        elif family is Family.RANDOM:
            _check_random(self.nodes, self.arc_density, self.cost_range, self.m)


@dataclass(frozen=True)
class GeneratedInstance:
    graph: ScenarioGraph
    meta: dict[str, Any] = field(default_factory=dict)


def generate(spec: GeneratorSpec) -> GeneratedInstance:
    """Build the instance a spec describes, with its meta block."""
    family = Family(spec.family)
    meta: dict[str, Any] = {"family": family.value}

    if family is Family.FIGURE1:
        graph = figure1()
        meta["expected"] = {"paths": 11, "pareto": 6, "lorenz_classes": 3}
    elif family is Family.HANSEN:
        assert spec.p is not None
        graph = hansen(spec.p)
        meta["p"] = spec.p
        meta["expected"] = {"paths": 2 ** spec.p, "pareto": 2 ** spec.p, "lorenz_classes": 1}
    elif family is Family.ANTILORENZ:
        assert spec.p is not None
        graph = antilorenz(spec.p)
        meta["p"] = spec.p
        meta["expected"] = {"paths": 2 ** spec.p, "pareto": 2 ** spec.p, "lorenz_classes": 2 ** spec.p}
    elif family is Family.PARTITION:
        assert spec.sizes is not None
        instance = partition_reduction(spec.sizes)
        graph = instance.graph
        meta.update(sizes=list(instance.sizes), scale=instance.scale, target=list(instance.target))
    else:
        graph = random_graph(spec.nodes, spec.arc_density, spec.cost_range, spec.m, spec.seed)
        meta.update(
            nodes=spec.nodes,
            density=str(spec.arc_density),
            cost_range=list(spec.cost_range),
            m=spec.m,
            seed=spec.seed,
        )

    logger.info(
        "Generated {family}: {nodes} nodes, {arcs} arcs",
        family=family.value,
        nodes=len(graph.nodes),
        arcs=len(graph.arcs),
    )
    return GeneratedInstance(graph, meta)
