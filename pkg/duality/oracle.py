"""Expected lattice-point counts from semistandard fillings."""

from functools import lru_cache
from itertools import combinations
from typing import List, Tuple

from plabic.partitions import GrassmannShape


def _columns(shape: GrassmannShape) -> List[Tuple[int, ...]]:
    return list(combinations(range(1, shape.n + 1), shape.rows))


@lru_cache(maxsize=None)
def dimension_oracle(shape: GrassmannShape, r: int) -> int:
    """Number of semistandard fillings of the (n-k) x r rectangle with entries in 1..n.

    Columns strictly increase by construction; rows must weakly increase, so a
    filling is a chain of r columns that dominate each other entrywise.
    """
    if r < 0:
        raise ValueError(f"Column count must be nonnegative, got {r}")
    columns = _columns(shape)
    follows = {
        c: [d for d in columns if all(x <= y for x, y in zip(c, d))] for c in columns
    }
    counts = {c: 1 for c in columns}
    if r == 0:
        return 1
    for _ in range(r - 1):
        counts = {c: sum(counts[d] for d in follows[c]) for c in columns}
    return sum(counts.values())
