"""Young diagrams in the (n-k) x k rectangle and their index sets.

A partition is read through the border path that runs from the north-east
corner of the rectangle to its south-west corner. The steps of that path are
labeled 1..n in order; the south steps give an (n-k)-subset of [n] and the west
steps give a k-subset.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, List, Tuple

IndexSubset = Tuple[int, ...]


@dataclass(kw_only=True, frozen=True)
class GrassmannShape:
    k: int
    n: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"Invalid shape: need 0 < k < n, got k={self.k}, n={self.n}")

    @property
    def rows(self) -> int:
        """Number of rows of the bounding rectangle, n - k."""
        return self.n - self.k

    @property
    def dimension(self) -> int:
        return self.k * (self.n - self.k)

    def partitions(self) -> List["Partition"]:
        """All partitions fitting in the rectangle, ordered by their south subsets."""
        return [partition_from_south(J, self) for J in self.south_subsets()]

    def rectangles(self) -> List["Partition"]:
        """The nonempty rectangular partitions i x j, row by row."""
        return [
            Partition.rectangle(i, j)
            for i in range(1, self.rows + 1)
            for j in range(1, self.k + 1)
        ]

    def south_subsets(self) -> List[IndexSubset]:
        return list(combinations(range(1, self.n + 1), self.rows))

    def trip_permutation(self) -> Tuple[int, ...]:
        """pi_{k,n} in one-line notation: i goes to i + (n - k) cyclically."""
        return tuple((i - 1 + self.rows) % self.n + 1 for i in range(1, self.n + 1))

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n}

    def __str__(self):
        return f"Gr({self.k},{self.n})"


@dataclass(frozen=True, order=True)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"Partition parts must be nonnegative: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def rectangle(cls, rows: int, columns: int) -> "Partition":
        if rows <= 0 or columns <= 0:
            return cls()
        return cls((columns,) * rows)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse '3,3', '[3,3]', '(3,3)' or '' / '0' / the empty set symbol."""
        text = text.strip().strip("[]()")
        if text in ("", "0", "∅"):
            return cls()
        return cls(tuple(int(p) for p in text.split(",")))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def row(self, index: int) -> int:
        """Length of row `index` (0-based), zero past the last part."""
        return self.parts[index] if index < len(self.parts) else 0

    def is_rectangle(self) -> bool:
        return len(set(self.parts)) <= 1

    def fits(self, shape: GrassmannShape) -> bool:
        return self.length <= shape.rows and self.row(0) <= shape.k

    @property
    def name(self) -> str:
        """Variable-name form: '3,3'; the empty partition is '∅'."""
        return ",".join(str(p) for p in self.parts) if self.parts else "∅"

    def __str__(self):
        return f"({self.name})" if self.parts else "∅"


def _require_fit(lam: Partition, shape: GrassmannShape):
    if not lam.fits(shape):
        raise ValueError(f"Partition {lam} does not fit in the {shape.rows}x{shape.k} rectangle")


def border_steps(lam: Partition, shape: GrassmannShape) -> str:
    """Steps of the NE -> SW border path of `lam`, as a string over {'S', 'W'}."""
    _require_fit(lam, shape)
    x, y, steps = shape.k, 0, []
    while len(steps) < shape.n:
        if y < shape.rows and x <= lam.row(y):
            steps.append("S")
            y += 1
        else:
            steps.append("W")
            x -= 1
    return "".join(steps)


def south_subset(lam: Partition, shape: GrassmannShape) -> IndexSubset:
    return tuple(i for i, step in enumerate(border_steps(lam, shape), start=1) if step == "S")


def west_subset(lam: Partition, shape: GrassmannShape) -> IndexSubset:
    return tuple(i for i, step in enumerate(border_steps(lam, shape), start=1) if step == "W")


def index_subset(elements: Iterable[int], n: int) -> IndexSubset:
    subset = tuple(sorted(set(int(e) for e in elements)))
    if any(e < 1 or e > n for e in subset):
        raise ValueError(f"Subset {subset} is not contained in [1, {n}]")
    return subset


def partition_from_south(J: Iterable[int], shape: GrassmannShape) -> Partition:
    J = index_subset(J, shape.n)
    if len(J) != shape.rows:
        raise ValueError(f"South subset {J} must have {shape.rows} elements")
    parts, x = [], shape.k
    for label in range(1, shape.n + 1):
        if label in J:
            parts.append(x)
        else:
            x -= 1
    return Partition(tuple(parts))


def partition_from_west(J: Iterable[int], shape: GrassmannShape) -> Partition:
    J = index_subset(J, shape.n)
    if len(J) != shape.k:
        raise ValueError(f"West subset {J} must have {shape.k} elements")
    complement = [i for i in range(1, shape.n + 1) if i not in J]
    return partition_from_south(complement, shape)


def cyclic_interval(start: int, length: int, n: int) -> IndexSubset:
    """[start, start + length - 1] read modulo n inside [1, n]."""
    return tuple(sorted((start - 1 + t) % n + 1 for t in range(length)))


@dataclass(frozen=True)
class FrozenLabel:
    i: int
    J: IndexSubset
    J_plus: IndexSubset
    mu: Partition
    mu_plus: Partition


def frozen_labels(shape: GrassmannShape) -> List[FrozenLabel]:
    """J_i = [i+1, i+k] and J_i^+ = [i+1, i+k-1] + {i+k+1}, with their partitions."""
    n, k = shape.n, shape.k
    labels = []
    for i in range(1, n + 1):
        J = cyclic_interval(i + 1, k, n)
        J_plus = index_subset(cyclic_interval(i + 1, k - 1, n) + ((i + k) % n + 1,), n)
        labels.append(
            FrozenLabel(
                i=i,
                J=J,
                J_plus=J_plus,
                mu=partition_from_west(J, shape),
                mu_plus=partition_from_west(J_plus, shape),
            )
        )
    return labels


def partition_count(shape: GrassmannShape) -> int:
    return comb(shape.n, shape.k)
