#!/usr/bin/env python3
"""
OWA

Purpose: the linear criterion over Lorenz vectors and its ordered weighted average form

Notes:
    - phi_values are phi(l_1) .. phi(l_m) with phi(l_0) = 0 and phi(l_(m+1)) = phi(l_m)
    - weights w_i = phi(l_i) - phi(l_(i-1)) must be strictly decreasing and positive
    - everything is exact (Fraction); normalisation (sum w_i = 1) is not required
"""

from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Iterable, Sequence, Union

from .exceptions import DimensionError, WeightValidationError

RationalLike = Union[int, str, Fraction, Decimal, float]


def _as_fraction(value: RationalLike) -> Fraction:
    # floats go through their shortest repr so 0.9 means 9/10
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def parse_rationals(text: str) -> tuple[Fraction, ...]:
    """
    Parse "0.9,1.0" or "9/10,1" into exact fractions.

    Raises:
        WeightValidationError: on an empty list or an unparsable item
    """
    items = [item.strip() for item in text.split(",")]
    if not text.strip() or any(not item for item in items):
        raise WeightValidationError(f"expected comma-separated numbers, got {text!r}")
    try:
        return tuple(Fraction(item) for item in items)
    except (ValueError, ZeroDivisionError) as e:
        raise WeightValidationError(f"cannot parse {text!r} as exact numbers: {e}") from e


def format_rational(value: Fraction) -> Union[int, str]:
    """
    Render a rational for JSON: int when integral, a decimal string when the
    expansion terminates ("9.7"), "p/q" otherwise.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    rest = value.denominator
    twos = fives = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = len(str(abs(value.numerator))) + max(twos, fives) + 2
    exact = Context(prec=digits).divide(Decimal(value.numerator), Decimal(value.denominator))
    return format(exact, "f")


@dataclass(frozen=True)
class OwaWeights:
    """Validated phi values with the derived OWA weights and Lorenz coefficients."""
    phi_values: tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.phi_values)

    @cached_property
    def weights(self) -> tuple[Fraction, ...]:
        padded = (Fraction(0), *self.phi_values)
        return tuple(padded[i] - padded[i - 1] for i in range(1, len(padded)))

    @cached_property
    def lorenz_coefficients(self) -> tuple[Fraction, ...]:
        """c_i = 2 phi(l_i) - phi(l_(i-1)) - phi(l_(i+1)) = w_i - w_(i+1), with c_m = w_m."""
        w = self.weights
        return tuple(w[i] - w[i + 1] for i in range(len(w) - 1)) + (w[-1],)

    @classmethod
    def from_weights(cls, weights: Iterable[RationalLike]) -> "OwaWeights":
        """Build from w_1 .. w_m by cumulating them into phi values."""
        return validate_weights(tuple(accumulate(_as_fraction(w) for w in weights)))


def validate_weights(phi_values: Sequence[RationalLike]) -> OwaWeights:
    """
    Check phi(l_i) - phi(l_(i-1)) > phi(l_(i+1)) - phi(l_i) > 0 for all i.

    Raises:
        WeightValidationError: naming the first violated inequality
    """
    if not phi_values:
        raise WeightValidationError("at least one phi value is required")
    candidate = OwaWeights(tuple(_as_fraction(v) for v in phi_values))
    w = candidate.weights
    for i in range(len(w) - 1):
        if not w[i] > w[i + 1]:
            raise WeightValidationError(
                f"w_{i + 1} > w_{i + 2} violated: {format_rational(w[i])} <= {format_rational(w[i + 1])}"
            )
    if not w[-1] > 0:
        raise WeightValidationError(f"w_{len(w)} > 0 violated: {format_rational(w[-1])}")
    return candidate


def _check_dimension(vector: Sequence[int], weights: OwaWeights) -> None:
    if len(vector) != weights.m:
        raise DimensionError(f"vector has {len(vector)} components, weights expect {weights.m}")


def phi_of_lorenz(lorenz: Sequence[int], weights: OwaWeights) -> Fraction:
    """Sum of c_i * L_i."""
    _check_dimension(lorenz, weights)
    return sum((c * value for c, value in zip(weights.lorenz_coefficients, lorenz)), Fraction(0))


def owa_value(x: Sequence[int], weights: OwaWeights) -> Fraction:
    """Sum of w_i * x_(i) with x sorted worst first."""
    _check_dimension(x, weights)
    ordered = sorted(x, reverse=True)
    return sum((w * value for w, value in zip(weights.weights, ordered)), Fraction(0))
