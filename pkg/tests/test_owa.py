from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given

from scripts.lorenzpath.dominance import lorenz_dominates, lorenz_vector
from scripts.lorenzpath.exceptions import DimensionError, WeightValidationError
from scripts.lorenzpath.owa import (
    OwaWeights,
    format_rational,
    owa_value,
    parse_rationals,
    phi_of_lorenz,
    validate_weights,
)

WEIGHT_SETS = [
    OwaWeights.from_weights([3, 2, 1]),
    OwaWeights.from_weights([Fraction(1), Fraction(1, 2), Fraction(1, 3)]),
    OwaWeights.from_weights([Fraction(6, 10), Fraction(3, 10), Fraction(1, 10)]),
]


class TestValidateWeights:
    def test_example_weights(self, example_weights):
        assert example_weights.weights == (Fraction(9, 10), Fraction(1, 10))
        assert example_weights.lorenz_coefficients == (Fraction(4, 5), Fraction(1, 10))

    def test_three_scenarios(self):
        weights = validate_weights([3, 5, 6])
        assert weights.weights == (3, 2, 1)
        assert weights.lorenz_coefficients == (1, 1, 1)

    def test_equal_weights_rejected(self):
        with pytest.raises(WeightValidationError, match=r"w_1 > w_2 violated"):
            validate_weights([1, 2])

    def test_non_positive_last_weight(self):
        with pytest.raises(WeightValidationError, match=r"w_2 > 0 violated"):
            validate_weights([1, Fraction(1, 2)])

    def test_empty(self):
        with pytest.raises(WeightValidationError):
            validate_weights([])

    def test_from_weights_matches_phi(self, example_weights):
        assert OwaWeights.from_weights(parse_rationals("0.9,0.1")) == example_weights

    def test_floats_read_as_decimals(self, example_weights):
        assert validate_weights([0.9, 1.0]) == example_weights


class TestParseAndFormat:
    def test_parse(self):
        assert parse_rationals("0.9, 1.0") == (Fraction(9, 10), Fraction(1))
        assert parse_rationals("9/10,1") == (Fraction(9, 10), Fraction(1))

    @pytest.mark.parametrize("text", ["", "0.9,", "a,b", "1/0"])
    def test_parse_rejects(self, text):
        with pytest.raises(WeightValidationError):
            parse_rationals(text)

    @pytest.mark.parametrize(
        "value, expected",
        [
            (Fraction(9), 9),
            (Fraction(97, 10), "9.7"),
            (Fraction(1, 3), "1/3"),
            (Fraction(-1, 8), "-0.125"),
            (Fraction(123456789, 1000), "123456.789"),
        ],
    )
    def test_format(self, value, expected):
        assert format_rational(value) == expected


class TestValues:
    def test_example_values(self, example_weights):
        assert owa_value((9, 9), example_weights) == 9
        assert owa_value((10, 7), example_weights) == Fraction(97, 10)
        assert phi_of_lorenz((9, 18), example_weights) == 9

    def test_dimension_mismatch(self, example_weights):
        with pytest.raises(DimensionError):
            owa_value((1, 2, 3), example_weights)

    @pytest.mark.parametrize("weights", WEIGHT_SETS)
    def test_owa_equals_phi_of_lorenz_exhaustive(self, weights):
        for x in product(range(7), repeat=3):
            assert owa_value(x, weights) == phi_of_lorenz(lorenz_vector(x), weights)

    @pytest.mark.parametrize("weights", WEIGHT_SETS)
    def test_strict_lorenz_monotonicity_exhaustive(self, weights):
        vectors = list(product(range(7), repeat=3))
        values = {x: owa_value(x, weights) for x in vectors}
        for x in vectors:
            for y in vectors:
                if lorenz_dominates(x, y):
                    assert values[x] < values[y]


@given(
    st.lists(st.integers(min_value=1, max_value=20), min_size=1, max_size=5, unique=True),
    st.lists(st.integers(min_value=0, max_value=30), min_size=5, max_size=5),
)
def test_owa_is_symmetric_and_between_min_and_max(raw, x):
    weights = OwaWeights.from_weights(sorted(raw, reverse=True))
    x = x[: weights.m]
    total = sum(weights.weights)
    value = owa_value(x, weights)
    assert owa_value(list(reversed(x)), weights) == value
    assert min(x) * total <= value <= max(x) * total


sorted_triples = st.lists(st.integers(min_value=0, max_value=30), min_size=3, max_size=3).map(
    lambda values: sorted(values, reverse=True)
)


@given(
    sorted_triples,
    sorted_triples,
    st.permutations(range(3)),
    st.fractions(min_value=0, max_value=1, max_denominator=50),
    st.sampled_from(WEIGHT_SETS),
)
def test_comonotonic_mixtures_are_linear(xs, ys, order, alpha, weights):
    # x and y share the same ordering of scenarios
    x = tuple(xs[k] for k in order)
    y = tuple(ys[k] for k in order)
    mixed = tuple(alpha * a + (1 - alpha) * b for a, b in zip(x, y))
    expected = alpha * phi_of_lorenz(lorenz_vector(x), weights) + (1 - alpha) * phi_of_lorenz(lorenz_vector(y), weights)
    assert phi_of_lorenz(lorenz_vector(mixed), weights) == expected


@given(
    st.lists(st.tuples(*[st.integers(min_value=0, max_value=12)] * 3), min_size=1, max_size=12),
    st.sampled_from(WEIGHT_SETS),
)
def test_owa_minimal_vectors_are_lorenz_non_dominated(vectors, weights):
    best = min(owa_value(x, weights) for x in vectors)
    for x in vectors:
        if owa_value(x, weights) == best:
            assert not any(lorenz_dominates(y, x) for y in vectors)
