import networkx as nx
import pytest

from scripts.lorenzpath.exceptions import GeneratorError
from scripts.lorenzpath.instances import (
    Family,
    GeneratorSpec,
    antilorenz,
    figure1,
    generate,
    hansen,
    partition_reduction,
    random_graph,
    with_back_arcs,
)
from scripts.lorenzpath.model import validate_graph
from scripts.lorenzpath.oracle import enumerate_paths


def test_figure1_shape():
    graph = figure1()
    assert len(graph.nodes) == 6
    assert len(graph.arcs) == 10
    assert validate_graph(graph).ok


@pytest.mark.parametrize("p", [1, 3, 5])
def test_hansen_costs(p):
    costs = sorted(path.cost for path in enumerate_paths(hansen(p)))
    assert costs == [(x, 2 ** p - 1 - x) for x in range(2 ** p)]


@pytest.mark.parametrize("p", [1, 3, 5])
def test_antilorenz_costs(p):
    costs = sorted(path.cost for path in enumerate_paths(antilorenz(p)))
    assert costs == [(2 * x, 3 * 2 ** p - x) for x in range(2 ** p)]


@pytest.mark.parametrize("p", [0, 21, -1])
def test_stage_range(p):
    with pytest.raises(GeneratorError):
        hansen(p)
    with pytest.raises(GeneratorError):
        antilorenz(p)


class TestPartition:
    def test_even_total(self):
        instance = partition_reduction([3, 1, 2])
        assert instance.target == (3, 3)
        assert instance.scale == 1
        assert len(enumerate_paths(instance.graph)) == 8

    def test_odd_total_is_doubled(self):
        instance = partition_reduction([3, 1, 1])
        assert instance.scale == 2
        assert instance.target == (5, 5)
        assert instance.sizes == (3, 1, 1)

    @pytest.mark.parametrize("sizes", [[], [0, 1], [2, -1]])
    def test_bad_sizes(self, sizes):
        with pytest.raises(GeneratorError):
            partition_reduction(sizes)


class TestRandom:
    def test_same_seed_same_graph(self):
        assert random_graph(12, 0.5, (1, 9), 3, 7) == random_graph(12, 0.5, (1, 9), 3, 7)

    def test_shape(self):
        graph = random_graph(12, 0.3, (2, 5), 3, 1)
        report = validate_graph(graph)
        assert report.ok and report.is_dag and report.strictly_positive
        assert all(2 <= c <= 5 for arc in graph.arcs for c in arc.cost)
        assert graph.source == "n0"

    @pytest.mark.parametrize("seed", range(10))
    def test_every_node_on_a_solution_path(self, seed):
        graph = random_graph(15, 0.2, (1, 9), 2, seed)
        digraph = graph.to_networkx()
        reachable = nx.descendants(digraph, graph.source) | {graph.source}
        assert reachable == set(graph.nodes)
        for node in graph.nodes:
            assert graph.is_goal(node) or nx.descendants(digraph, node) & graph.goal_set

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(nodes=1, arc_density=0.5, cost_range=(1, 9), m=2),
            dict(nodes=5, arc_density=0.0, cost_range=(1, 9), m=2),
            dict(nodes=5, arc_density=0.5, cost_range=(0, 9), m=2),
            dict(nodes=5, arc_density=0.5, cost_range=(5, 4), m=2),
            dict(nodes=5, arc_density=0.5, cost_range=(1, 9), m=0),
        ],
    )
    def test_bad_parameters(self, kwargs):
        with pytest.raises(GeneratorError):
            random_graph(seed=0, **kwargs)

    def test_back_arcs(self):
        base = random_graph(10, 0.4, (1, 9), 2, 3)
        cyclic = with_back_arcs(base, 5, 3)
        assert len(cyclic.arcs) == len(base.arcs) + 5
        assert cyclic.strictly_positive
        assert cyclic.arcs[: len(base.arcs)] == base.arcs
        for arc in cyclic.arcs[len(base.arcs):]:
            assert cyclic.node_order[arc.head] < cyclic.node_order[arc.tail]


class TestGenerate:
    def test_figure1_meta(self):
        instance = generate(GeneratorSpec(Family.FIGURE1))
        assert instance.meta == {"family": "figure1", "expected": {"paths": 11, "pareto": 6, "lorenz_classes": 3}}

    def test_partition_meta(self):
        instance = generate(GeneratorSpec(Family.PARTITION, sizes=(3, 1, 2)))
        assert instance.meta["target"] == [3, 3]
        assert instance.meta["scale"] == 1

    def test_random_meta_has_no_floats(self):
        instance = generate(GeneratorSpec(Family.RANDOM, nodes=8, arc_density=0.25, seed=4))
        assert instance.meta["density"] == "0.25"
        assert instance.graph == random_graph(8, 0.25, (1, 9), 2, 4)

    def test_spec_validation(self):
        with pytest.raises(GeneratorError):
            GeneratorSpec(Family.HANSEN)
        with pytest.raises(GeneratorError):
            GeneratorSpec(Family.PARTITION, sizes=())
        with pytest.raises(GeneratorError):
            GeneratorSpec(Family.RANDOM, nodes=1)
