#!/usr/bin/env python3
"""
Dominance

Purpose: Pareto and generalized Lorenz dominance on integer cost vectors

Notes:
    - all objectives are minimised: smaller costs are better
    - a Lorenz vector is the running sum of the costs sorted worst first,
      so L_1 is the worst-case cost and L_m the total cost
    - lexicographic order on Lorenz vectors refines Lorenz dominance, the
      search uses it as its priority
"""

from enum import Enum
from itertools import accumulate
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DimensionError, TransferError
from .model import CostVector

LorenzVector = tuple[int, ...]


def _check_lengths(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


def weak_pareto_dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff x is componentwise no worse than y."""
    _check_lengths(x, y)
    return all(a <= b for a, b in zip(x, y))


def pareto_dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """Strict Pareto dominance: weakly better everywhere, strictly somewhere."""
    return weak_pareto_dominates(x, y) and not weak_pareto_dominates(y, x)


def lorenz_vector(x: Sequence[int]) -> LorenzVector:
    """Cumulative sums of the components sorted in decreasing order."""
    return tuple(accumulate(sorted(x, reverse=True)))


def lorenz_weakly_dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    _check_lengths(x, y)
    return weak_pareto_dominates(lorenz_vector(x), lorenz_vector(y))


def lorenz_dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """Strict generalized Lorenz dominance."""
    _check_lengths(x, y)
    lx, ly = lorenz_vector(x), lorenz_vector(y)
    return weak_pareto_dominates(lx, ly) and lx != ly


class LexOrder(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def lex_compare(first: Sequence[int], second: Sequence[int]) -> LexOrder:
    """Lexicographic comparison of two Lorenz vectors; LESS is the preferred one."""
    _check_lengths(first, second)
    a, b = tuple(first), tuple(second)
    if a < b:
        return LexOrder.LESS
    if a > b:
        return LexOrder.GREATER
    return LexOrder.EQUAL


def pigou_dalton_transfer(x: Sequence[int], i: int, j: int, eps: int) -> CostVector:
    """
    Move `eps` from component i to component j (0-based indices).

    The transfer is admissible when x[i] > x[j] and 0 <= eps <= x[i] - x[j];
    a zero transfer always returns x unchanged.

    Raises:
        TransferError: for an inadmissible transfer or bad indices
    """
    m = len(x)
    if not (0 <= i < m and 0 <= j < m) or i == j:
        raise TransferError(f"indices ({i}, {j}) must be distinct and within 0..{m - 1}")
    if eps == 0:
        return tuple(x)
    if x[i] <= x[j]:
        raise TransferError(f"transfer must go from a larger to a smaller component: x[{i}]={x[i]} <= x[{j}]={x[j]}")
    if not 0 <= eps <= x[i] - x[j]:
        raise TransferError(f"transfer size {eps} outside 0..{x[i] - x[j]}")
    moved = list(x)
    moved[i] -= eps
    moved[j] += eps
    return tuple(moved)


def sum_bound_dominates(x: Sequence[int], y: Sequence[int]) -> bool:
    """
    Cheap sufficient test for x strictly Lorenz-dominating y.

    A False answer is inconclusive, not a non-dominance claim.
    """
    _check_lengths(x, y)
    return sum(y) > len(x) * max(x, default=0)


class DominanceVerdict(str, Enum):
    """How x relates to y under one dominance relation."""
    STRICTLY_DOMINATES = "strictly_dominates"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"
    STRICTLY_DOMINATED = "strictly_dominated"

    def mirror(self) -> "DominanceVerdict":
        """The verdict for (y, x)."""
        if self is DominanceVerdict.STRICTLY_DOMINATES:
            return DominanceVerdict.STRICTLY_DOMINATED
        if self is DominanceVerdict.STRICTLY_DOMINATED:
            return DominanceVerdict.STRICTLY_DOMINATES
        return self


class Relation(str, Enum):
    PARETO = "pareto"
    LORENZ = "lorenz"


def compare(x: Sequence[int], y: Sequence[int], relation: Relation = Relation.LORENZ) -> DominanceVerdict:
    _check_lengths(x, y)
    if relation is Relation.LORENZ:
        x, y = lorenz_vector(x), lorenz_vector(y)
    forward = weak_pareto_dominates(x, y)
    backward = weak_pareto_dominates(y, x)
    if forward and backward:
        return DominanceVerdict.EQUIVALENT
    if forward:
        return DominanceVerdict.STRICTLY_DOMINATES
    if backward:
        return DominanceVerdict.STRICTLY_DOMINATED
    return DominanceVerdict.INCOMPARABLE


def _uniform(vectors: Sequence[Sequence[int]]) -> None:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise DimensionError(f"vectors of mixed lengths: {sorted(lengths)}")


def _flag_non_dominated(points: np.ndarray) -> np.ndarray:
    """
    Flag the rows not weakly dominated by an earlier kept row.

    Among equal rows only the first one stays flagged.
    """
    n_points = points.shape[0]
    keep = np.ones(n_points, dtype=bool)
    for i in range(n_points):
        if keep[i]:
            # points[i] is not dominated by any earlier point; clear the flag
            # on every point it weakly dominates, equal ones included
            keep[keep] = np.any(points[keep] < points[i], axis=1)
            keep[i] = True
    return keep


def pareto_indices(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Input positions of the Pareto-non-dominated vectors, first of each duplicate group."""
    if not vectors:
        return []
    _uniform(vectors)
    flags = _flag_non_dominated(np.asarray(vectors, dtype=np.int64))
    return [int(i) for i in np.flatnonzero(flags)]


def pareto_filter(vectors: Sequence[Sequence[int]]) -> list[CostVector]:
    return [tuple(vectors[i]) for i in pareto_indices(vectors)]


def lorenz_indices(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Input positions of the Lorenz-non-dominated vectors, one per Lorenz class."""
    if not vectors:
        return []
    _uniform(vectors)
    return pareto_indices([lorenz_vector(v) for v in vectors])


def lorenz_filter(vectors: Sequence[Sequence[int]]) -> list[CostVector]:
    return [tuple(vectors[i]) for i in lorenz_indices(vectors)]


def lorenz_classes(vectors: Iterable[Sequence[int]]) -> list[tuple[LorenzVector, list[CostVector]]]:
    """Group vectors by Lorenz vector, classes and members in first-seen order."""
    classes: dict[LorenzVector, list[CostVector]] = {}
    for vector in vectors:
        members = classes.setdefault(lorenz_vector(vector), [])
        if tuple(vector) not in members:
            members.append(tuple(vector))
    return list(classes.items())


def generator_vector(i: int, m: int) -> LorenzVector:
    """l_i = (1, 2, ..., i, i, ..., i); l_0 is the zero vector."""
    if not 0 <= i <= m:
        raise DimensionError(f"generator index {i} outside 0..{m}")
    return tuple(min(k, i) for k in range(1, m + 1))


def generator_coefficients(lorenz: Sequence[int]) -> tuple[int, ...]:
    """
    Coefficients 2L_i - L_(i-1) - L_(i+1) with L_0 = 0 and L_(m+1) = L_m.

    A Lorenz vector is the sum of coeff_i * generator_vector(i, m); for
    L = lorenz_vector(x) the coefficients are x_(i) - x_(i+1) >= 0.
    """
    padded = (0, *lorenz, lorenz[-1]) if lorenz else (0, 0)
    return tuple(
        2 * padded[k] - padded[k - 1] - padded[k + 1] for k in range(1, len(lorenz) + 1)
    )
