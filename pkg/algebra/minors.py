"""Exact maximal minors of integer matrices and three-term Plucker relations."""

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from sympy import Matrix

from plabic.partitions import GrassmannShape, IndexSubset


class VanishingMinorError(ZeroDivisionError):
    """Raised when a minor needed as a denominator is zero."""


def minor(M: Sequence[Sequence[int]], columns: Iterable[int]) -> int:
    """The maximal minor of M on the given 1-based column set."""
    columns = sorted(columns)
    sub = Matrix([[int(row[c - 1]) for c in columns] for row in M])
    return int(sub.det(method="bareiss"))


def plucker_vector(M: Sequence[Sequence[int]], n: int) -> Dict[IndexSubset, int]:
    k = len(M)
    return {J: minor(M, J) for J in combinations(range(1, n + 1), k)}


def sample_generic_matrix(
    shape: GrassmannShape,
    rng: np.random.Generator,
    subsets: Iterable[IndexSubset] = (),
    max_attempts: int = 1000,
    low: int = -5,
    high: int = 5,
) -> List[List[int]]:
    """Draw k x n integer matrices until every listed minor is nonzero."""
    subsets = list(subsets)
    for _ in range(max_attempts):
        M = rng.integers(low, high + 1, size=(shape.k, shape.n)).tolist()
        if all(minor(M, J) != 0 for J in subsets):
            return M
    raise VanishingMinorError(
        f"No {shape.k}x{shape.n} matrix with nonvanishing minors found in {max_attempts} attempts"
    )


def three_term_relations(size: int, n: int) -> List[Tuple[IndexSubset, ...]]:
    """All (Sac, Sbd, Sab, Scd, Sad, Sbc) with a < b < c < d outside S and |S| = size - 2."""
    relations = []
    if size < 2 or size > n - 2:
        return relations
    for a, b, c, d in combinations(range(1, n + 1), 4):
        rest = [i for i in range(1, n + 1) if i not in (a, b, c, d)]
        for S in combinations(rest, size - 2):
            def join(*extra):
                return tuple(sorted(S + extra))

            relations.append((join(a, c), join(b, d), join(a, b), join(c, d), join(a, d), join(b, c)))
    return relations


def check_three_term_relations(values: Mapping[IndexSubset, Fraction], size: int, n: int) -> List[Tuple[IndexSubset, ...]]:
    """Return the relations p_Sac p_Sbd = p_Sab p_Scd + p_Sad p_Sbc that fail; empty means all hold."""
    failures = []
    for sac, sbd, sab, scd, sad, sbc in three_term_relations(size, n):
        lhs = Fraction(values[sac]) * values[sbd]
        rhs = Fraction(values[sab]) * values[scd] + Fraction(values[sad]) * values[sbc]
        if lhs != rhs:
            failures.append((sac, sbd, sab, scd, sad, sbc))
    return failures
