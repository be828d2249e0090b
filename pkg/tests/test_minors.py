from fractions import Fraction

import pytest

from algebra.minors import (
    VanishingMinorError,
    check_three_term_relations,
    minor,
    plucker_vector,
    sample_generic_matrix,
    three_term_relations,
)
from plabic.partitions import GrassmannShape


def test_minor_uses_one_based_columns():
    M = [[1, 2, 3], [4, 5, 6]]
    assert minor(M, (1, 2)) == -3
    assert minor(M, (1, 3)) == -6
    assert minor(M, (3, 1)) == -6


def test_three_term_relations_hold_for_minors(rng):
    shape = GrassmannShape(k=2, n=5)
    M = sample_generic_matrix(shape, rng)
    values = plucker_vector(M, shape.n)
    assert len(three_term_relations(2, 5)) == 5
    assert check_three_term_relations(values, 2, 5) == []
    broken = dict(values)
    broken[(1, 3)] += 1
    assert check_three_term_relations(broken, 2, 5)


def test_three_term_relations_for_gr36(rng):
    shape = GrassmannShape(k=3, n=6)
    M = sample_generic_matrix(shape, rng)
    values = {J: Fraction(v) for J, v in plucker_vector(M, shape.n).items()}
    assert check_three_term_relations(values, 3, 6) == []


def test_generic_matrix_avoids_listed_minors(rng):
    shape = GrassmannShape(k=2, n=4)
    subsets = [(1, 2), (2, 3), (3, 4), (1, 4)]
    M = sample_generic_matrix(shape, rng, subsets)
    assert all(minor(M, J) != 0 for J in subsets)
    with pytest.raises(VanishingMinorError):
        sample_generic_matrix(shape, rng, subsets, max_attempts=5, low=0, high=0)
