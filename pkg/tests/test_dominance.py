from itertools import permutations, product

import hypothesis.strategies as st
import pytest
from hypothesis import given

from scripts.lorenzpath.dominance import (
    DominanceVerdict,
    LexOrder,
    Relation,
    compare,
    generator_coefficients,
    generator_vector,
    lex_compare,
    lorenz_classes,
    lorenz_dominates,
    lorenz_filter,
    lorenz_indices,
    lorenz_vector,
    lorenz_weakly_dominates,
    pareto_dominates,
    pareto_filter,
    pareto_indices,
    pigou_dalton_transfer,
    sum_bound_dominates,
    weak_pareto_dominates,
)
from scripts.lorenzpath.exceptions import DimensionError, TransferError
from scripts.lorenzpath.instances import antilorenz, hansen
from scripts.lorenzpath.oracle import enumerate_paths

# all costs of the worked example's 11 paths, in enumeration order
FIGURE1_COSTS = [
    (9, 9), (12, 6), (10, 7), (10, 11), (8, 12), (9, 11),
    (13, 5), (11, 6), (6, 11), (4, 12), (5, 11),
]


def small_vectors(m: int, top: int = 6) -> list[tuple[int, ...]]:
    return list(product(range(top + 1), repeat=m))


vectors_3 = st.lists(st.integers(min_value=0, max_value=50), min_size=3, max_size=3).map(tuple)


class TestPareto:
    def test_weak(self):
        assert weak_pareto_dominates((5, 3), (10, 4))
        assert weak_pareto_dominates((7, 7), (7, 7))
        assert not weak_pareto_dominates((13, 5), (11, 6))
        assert not weak_pareto_dominates((11, 6), (13, 5))

    def test_strict(self):
        assert pareto_dominates((11, 6), (12, 6))
        assert not pareto_dominates((7, 7), (7, 7))
        assert not pareto_dominates((9, 9), (10, 7))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            weak_pareto_dominates((1, 2), (1, 2, 3))

    def test_filter_worked_example(self):
        assert set(pareto_filter(FIGURE1_COSTS)) == {(9, 9), (10, 7), (13, 5), (11, 6), (4, 12), (5, 11)}

    def test_duplicates_collapse_to_first(self):
        assert pareto_indices([(1, 2), (1, 2), (2, 1), (3, 3)]) == [0, 2]

    def test_empty_and_singleton(self):
        assert pareto_filter([]) == []
        assert pareto_filter([(4, 4)]) == [(4, 4)]

    def test_hansen_costs_all_pareto_optimal(self):
        costs = [p.cost for p in enumerate_paths(hansen(3))]
        assert len(pareto_filter(costs)) == 8


class TestLorenz:
    @pytest.mark.parametrize(
        "x, expected",
        [((9, 9), (9, 18)), ((5, 11), (11, 16)), ((0, 0, 0), (0, 0, 0)), ((1, 3, 2), (3, 5, 6))],
    )
    def test_lorenz_vector(self, x, expected):
        assert lorenz_vector(x) == expected

    def test_dominance_examples(self):
        assert lorenz_dominates((11, 6), (13, 5))
        assert lorenz_dominates((24, 24), (25, 23))
        assert lorenz_weakly_dominates((12, 6), (13, 5))
        assert not lorenz_dominates((13, 5), (11, 6))

    def test_permutations_are_equivalent(self):
        assert lorenz_weakly_dominates((2, 7), (7, 2))
        assert not lorenz_dominates((2, 7), (7, 2))

    def test_filter_worked_example(self):
        assert lorenz_filter(FIGURE1_COSTS) == [(9, 9), (10, 7), (5, 11)]

    def test_filter_keeps_first_of_class(self):
        costs = [p.cost for p in enumerate_paths(hansen(3))]
        kept = lorenz_filter(costs)
        assert len(kept) == 1
        assert lorenz_vector(kept[0]) == (4, 7)
        assert kept[0] == next(c for c in costs if lorenz_vector(c) == (4, 7))

    def test_antilorenz_keeps_everything(self):
        costs = [p.cost for p in enumerate_paths(antilorenz(3))]
        assert len(lorenz_filter(costs)) == 8

    def test_classes(self):
        classes = lorenz_classes([(0, 3), (1, 2), (2, 1), (3, 0), (1, 2)])
        assert classes == [((3, 3), [(0, 3), (3, 0)]), ((2, 3), [(1, 2), (2, 1)])]

    def test_lorenz_filter_subset_of_pareto_filter(self):
        assert set(lorenz_filter(FIGURE1_COSTS)) <= set(pareto_filter(FIGURE1_COSTS))

    def test_bellman_principle_fails(self):
        # preference between two subpaths flips once a common arc is appended
        assert lorenz_dominates((3, 2), (1, 4))
        assert lorenz_dominates((1 + 3, 4 + 1), (3 + 3, 2 + 1))

    def test_mixture_independence_conflict(self):
        x, y, z = (24, 24), (22, 26), (26, 22)
        assert lorenz_dominates(x, y)
        half_x_z = tuple((a + c) // 2 for a, c in zip(x, z))
        half_y_z = tuple((b + c) // 2 for b, c in zip(y, z))
        assert half_x_z == (25, 23) and half_y_z == (24, 24)
        # independence would require (25, 23) to beat (24, 24)
        assert lorenz_dominates(half_y_z, half_x_z)

    def test_comonotonic_vectors_add_linearly(self):
        x, y = (3, 1, 0), (5, 2, 2)
        summed = tuple(a + b for a, b in zip(x, y))
        assert lorenz_vector(summed) == tuple(a + b for a, b in zip(lorenz_vector(x), lorenz_vector(y)))


class TestLex:
    def test_examples(self):
        assert lex_compare((9, 18), (10, 17)) is LexOrder.LESS
        assert lex_compare((10, 17), (11, 16)) is LexOrder.LESS
        assert lex_compare((11, 16), (11, 16)) is LexOrder.EQUAL
        assert lex_compare((11, 17), (11, 16)) is LexOrder.GREATER

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            lex_compare((1,), (1, 2))


class TestTransfer:
    def test_example(self):
        assert pigou_dalton_transfer((13, 5), 0, 1, 4) == (9, 9)

    def test_zero_transfer(self):
        assert pigou_dalton_transfer((3, 3), 0, 1, 0) == (3, 3)

    def test_too_large(self):
        with pytest.raises(TransferError):
            pigou_dalton_transfer((13, 5), 0, 1, 9)

    def test_wrong_direction(self):
        with pytest.raises(TransferError):
            pigou_dalton_transfer((5, 13), 0, 1, 2)

    def test_bad_indices(self):
        with pytest.raises(TransferError):
            pigou_dalton_transfer((5, 13), 1, 1, 2)
        with pytest.raises(TransferError):
            pigou_dalton_transfer((5, 13), 0, 2, 2)


class TestSumBound:
    def test_examples(self):
        assert sum_bound_dominates((9, 9), (13, 7))
        assert not sum_bound_dominates((9, 9), (10, 8))


class TestVerdict:
    def test_lorenz_verdicts(self):
        assert compare((11, 6), (13, 5)) is DominanceVerdict.STRICTLY_DOMINATES
        assert compare((13, 5), (11, 6)) is DominanceVerdict.STRICTLY_DOMINATED
        assert compare((2, 7), (7, 2)) is DominanceVerdict.EQUIVALENT
        assert compare((9, 9), (5, 11)) is DominanceVerdict.INCOMPARABLE

    def test_pareto_relation(self):
        assert compare((2, 7), (7, 2), Relation.PARETO) is DominanceVerdict.INCOMPARABLE

    @given(vectors_3, vectors_3)
    def test_mirror(self, x, y):
        for relation in Relation:
            assert compare(y, x, relation) is compare(x, y, relation).mirror()


class TestGenerators:
    def test_generator_vector(self):
        assert generator_vector(2, 3) == (1, 2, 2)
        assert generator_vector(0, 3) == (0, 0, 0)
        with pytest.raises(DimensionError):
            generator_vector(4, 3)

    def test_coefficients_are_sorted_gaps(self):
        assert generator_coefficients(lorenz_vector((5, 2, 1))) == (3, 1, 1)

    @given(vectors_3)
    def test_lorenz_vector_is_generator_combination(self, x):
        lorenz = lorenz_vector(x)
        coefficients = generator_coefficients(lorenz)
        assert all(c >= 0 for c in coefficients)
        rebuilt = [0, 0, 0]
        for i, c in enumerate(coefficients, start=1):
            for k, value in enumerate(generator_vector(i, 3)):
                rebuilt[k] += c * value
        assert tuple(rebuilt) == lorenz


@pytest.mark.parametrize("m", [1, 2, 3])
class TestAxiomsExhaustive:
    """Every integer vector with m <= 3 and components <= 6."""

    def test_lorenz_vector_shape_and_symmetry(self, m):
        for x in small_vectors(m):
            lorenz = lorenz_vector(x)
            assert lorenz[0] == max(x) and lorenz[-1] == sum(x)
            increments = [b - a for a, b in zip((0,) + lorenz, lorenz)]
            assert all(step >= 0 for step in increments)
            assert increments == sorted(increments, reverse=True)
            assert all(lorenz_vector(p) == lorenz for p in permutations(x))

    def test_transfers_improve(self, m):
        for x in small_vectors(m):
            for i, j in permutations(range(m), 2):
                if x[i] <= x[j]:
                    continue
                for eps in range(1, x[i] - x[j] + 1):
                    moved = pigou_dalton_transfer(x, i, j, eps)
                    assert lorenz_weakly_dominates(moved, x)
                    if eps < x[i] - x[j]:
                        assert lorenz_dominates(moved, x)

    def test_pairwise_properties(self, m):
        vectors = small_vectors(m)
        for x in vectors:
            lx = lorenz_vector(x)
            for y in vectors:
                strict = lorenz_dominates(x, y)
                if pareto_dominates(x, y):
                    assert strict
                if sum_bound_dominates(x, y):
                    assert strict
                if strict:
                    assert lex_compare(lx, lorenz_vector(y)) is LexOrder.LESS


@pytest.mark.parametrize("m", [2, 3])
def test_strict_lorenz_then_pareto_chains_exhaustive(m):
    vectors = small_vectors(m)
    pareto_below = {y: frozenset(z for z in vectors if pareto_dominates(y, z)) for y in vectors}
    for x in vectors:
        lorenz_below = frozenset(y for y in vectors if lorenz_dominates(x, y))
        for y in lorenz_below:
            assert pareto_below[y] <= lorenz_below, (x, y)


@given(vectors_3, vectors_3, vectors_3)
def test_strict_lorenz_then_pareto_chains(x, y, z):
    if lorenz_dominates(x, y) and pareto_dominates(y, z):
        assert lorenz_dominates(x, z)


@given(
    st.lists(st.integers(min_value=0, max_value=8), min_size=4, max_size=4),
    st.lists(st.integers(min_value=0, max_value=8), min_size=4, max_size=4),
)
def test_sum_bound_sound_four_scenarios(x, y):
    if sum_bound_dominates(x, y):
        assert lorenz_dominates(x, y)


@given(st.lists(st.lists(st.integers(min_value=0, max_value=9), min_size=2, max_size=2), max_size=12))
def test_filters_agree_with_pairwise_definition(vectors):
    kept = lorenz_indices(vectors)
    for i, x in enumerate(vectors):
        dominated = any(lorenz_dominates(y, x) for y in vectors)
        first_of_class = all(lorenz_vector(vectors[k]) != lorenz_vector(x) for k in range(i))
        assert (i in kept) == (not dominated and first_of_class)


@given(st.lists(st.lists(st.integers(min_value=0, max_value=9), min_size=3, max_size=3), max_size=15))
def test_lorenz_filter_within_pareto_filter(vectors):
    assert set(lorenz_filter(vectors)) <= set(pareto_filter(vectors))
