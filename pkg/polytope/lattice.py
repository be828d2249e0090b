"""Lattice points of bounded polytopes by a pruned bounding-box scan."""

from fractions import Fraction
from math import ceil, floor
from typing import List, Sequence, Tuple, Union

from polytope.polytope import AffineInequality, HPolytope, UnboundedPolytopeError, VPolytope

LatticePoint = Tuple[int, ...]


def bounding_box(P: Union[HPolytope, VPolytope]) -> List[Tuple[int, int]]:
    """Integer bounds per coordinate; an empty box list means an empty polytope."""
    if isinstance(P, HPolytope) and not P.is_bounded:
        raise UnboundedPolytopeError(f"Cannot scan an unbounded polyhedron in {P.dimension} coordinates")
    vertices = P.vertices.points
    if not vertices:
        return []
    return [
        (ceil(min(p[i] for p in vertices)), floor(max(p[i] for p in vertices)))
        for i in range(P.dimension)
    ]


def _reachable(row: AffineInequality, fixed: Sequence[int], box: Sequence[Tuple[int, int]], equation: bool) -> bool:
    """Whether some completion of the fixed prefix inside the box can satisfy the row."""
    depth = len(fixed)
    value = row.const + sum((a * x for a, x in zip(row.coeffs, fixed) if a), Fraction(0))
    high = low = value
    for a, (lo, hi) in zip(row.coeffs[depth:], box[depth:]):
        if a > 0:
            high += a * hi
            low += a * lo
        elif a < 0:
            high += a * lo
            low += a * hi
    if equation:
        return low <= 0 <= high
    return high >= 0


def lattice_points(P: Union[HPolytope, VPolytope]) -> List[LatticePoint]:
    """Every integer point of a bounded polytope, in lexicographic order."""
    H = P if isinstance(P, HPolytope) else P.facets
    box = bounding_box(P)
    if not box or any(lo > hi for lo, hi in box):
        return []
    dim = len(box)
    points: List[LatticePoint] = []

    def scan(prefix: List[int]):
        if len(prefix) == dim:
            if H.contains(prefix):
                points.append(tuple(prefix))
            return
        lo, hi = box[len(prefix)]
        for x in range(lo, hi + 1):
            prefix.append(x)
            if all(_reachable(row, prefix, box, False) for row in H.inequalities) and all(
                _reachable(row, prefix, box, True) for row in H.equations
            ):
                scan(prefix)
            prefix.pop()

    scan([])
    return points


def count_lattice_points(P: Union[HPolytope, VPolytope]) -> int:
    return len(lattice_points(P))
