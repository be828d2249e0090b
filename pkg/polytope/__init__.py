from .lattice import bounding_box, count_lattice_points, lattice_points
from .mutation import MutationMapSpec, mutate_point, mutate_polytope_points, pl_mutate
from .polytope import (
    AffineInequality,
    EqualityVerdict,
    HPolytope,
    UnboundedPolytopeError,
    VPolytope,
    dilate,
    equal_polytopes,
    hull,
    minkowski_sum,
    vertices_of,
)
