"""The tropicalized cluster mutation between the coordinates of adjacent charts."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from plabic.partitions import Partition
from polytope.polytope import Coordinates, VPolytope


@dataclass(frozen=True)
class MutationMapSpec:
    """Square move at `mutated`, which becomes `replacement`.

    `neighbors` are the four labels around the square in cyclic order. The
    empty partition may appear among them; its coordinate is identically zero.
    """

    coords: Coordinates
    mutated: Partition
    replacement: Partition
    neighbors: Tuple[Partition, Partition, Partition, Partition]

    def __post_init__(self):
        if self.mutated not in self.coords:
            raise ValueError(f"Mutated label {self.mutated} is not a coordinate")
        if self.replacement in self.coords:
            raise ValueError(f"Replacement label {self.replacement} is already a coordinate")
        for lam in self.neighbors:
            if not lam.is_empty() and lam not in self.coords:
                raise ValueError(f"Neighbor label {lam} is not a coordinate")
        named = [self.mutated, *self.neighbors]
        if len(set(named)) != len(named):
            raise ValueError(f"Labels around the square are not distinct: {[str(x) for x in named]}")

    @property
    def target_coords(self) -> Coordinates:
        return tuple(self.replacement if lam == self.mutated else lam for lam in self.coords)

    def inverse(self) -> "MutationMapSpec":
        return MutationMapSpec(
            coords=self.target_coords,
            mutated=self.replacement,
            replacement=self.mutated,
            neighbors=self.neighbors,
        )

    @classmethod
    def from_step(cls, coords: Coordinates, step) -> "MutationMapSpec":
        return cls(coords=tuple(coords), mutated=step.mutated, replacement=step.replacement, neighbors=tuple(step.neighbors))


def _value(point: Sequence, index: dict, lam: Partition):
    return 0 if lam.is_empty() else point[index[lam]]


def mutate_point(point: Sequence, spec: MutationMapSpec) -> Tuple:
    index = {lam: i for i, lam in enumerate(spec.coords)}
    v2, v3, v4, v5 = (_value(point, index, lam) for lam in spec.neighbors)
    position = index[spec.mutated]
    new = min(v2 + v4, v3 + v5) - point[position]
    return tuple(new if i == position else x for i, x in enumerate(point))


def pl_mutate(points: Iterable[Sequence], spec: MutationMapSpec) -> List[Tuple]:
    return [mutate_point(p, spec) for p in points]


def mutate_polytope_points(P: VPolytope, spec: MutationMapSpec) -> VPolytope:
    """Image of a point set; the map is piecewise linear, so only the points move."""
    return VPolytope(coords=spec.target_coords, points=tuple(tuple(Fraction(x) for x in p) for p in pl_mutate(P.points, spec)))
