"""Exact rational polytopes in V- and H-representation.

Conversions go through cddlib in exact rational mode. Inequalities read
const + sum(coeffs[i] * v[i]) >= 0; equations read the same with = 0.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

import cdd

from plabic.partitions import Partition

Coordinates = Tuple[Partition, ...]
Point = Tuple[Fraction, ...]


class UnboundedPolytopeError(ValueError):
    """Raised when vertex enumeration or a lattice scan meets an unbounded polyhedron."""


def as_point(values: Iterable) -> Point:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True, order=True)
class AffineInequality:
    const: Fraction
    coeffs: Tuple[Fraction, ...]

    @classmethod
    def make(cls, const, coeffs) -> "AffineInequality":
        return cls(const=Fraction(const), coeffs=as_point(coeffs))

    def evaluate(self, point: Sequence) -> Fraction:
        return self.const + sum((a * x for a, x in zip(self.coeffs, point) if a), Fraction(0))

    def primitive(self) -> "AffineInequality":
        """Positive rescaling to coprime integers."""
        entries = (self.const,) + self.coeffs
        scale = reduce(lcm, (e.denominator for e in entries), 1)
        ints = [int(e * scale) for e in entries]
        common = reduce(gcd, ints, 0) or 1
        return AffineInequality.make(ints[0] // common, [x // common for x in ints[1:]])

    def oriented(self) -> "AffineInequality":
        """Primitive form of an equation, with its first nonzero coefficient positive."""
        p = self.primitive()
        lead = next((a for a in p.coeffs if a), p.const)
        return p if lead >= 0 else AffineInequality.make(-p.const, [-a for a in p.coeffs])

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def format(self, coords: Coordinates, prefix: str = "v") -> str:
        pieces = []
        for a, lam in zip(self.coeffs, coords):
            if not a:
                continue
            name = f"{prefix}[{lam.name}]"
            sign = "-" if a < 0 else "+"
            magnitude = "" if abs(a) == 1 else f"{abs(a)}*"
            pieces.append(f"{sign} {magnitude}{name}")
        text = " ".join(pieces).lstrip("+ ")
        if self.const:
            text = f"{self.const} " + (text if text.startswith("-") else f"+ {text}")
        return text or "0"

    def to_json(self) -> dict:
        return {"const": str(self.const), "coeffs": [str(a) for a in self.coeffs]}


def _dedupe_inequalities(rows: Iterable[AffineInequality]) -> Tuple[AffineInequality, ...]:
    return tuple(sorted({r.primitive() for r in rows if not r.is_trivial()}))


def _dedupe_equations(rows: Iterable[AffineInequality]) -> Tuple[AffineInequality, ...]:
    return tuple(sorted({r.oriented() for r in rows if not r.is_trivial()}))


@dataclass
class HPolytope:
    coords: Coordinates
    inequalities: Tuple[AffineInequality, ...]
    equations: Tuple[AffineInequality, ...] = ()

    def __post_init__(self):
        self.coords = tuple(self.coords)
        dim = len(self.coords)
        for row in tuple(self.inequalities) + tuple(self.equations):
            if len(row.coeffs) != dim:
                raise ValueError(f"Inequality {row} does not match the {dim} coordinates")
        self.inequalities = _dedupe_inequalities(self.inequalities)
        self.equations = _dedupe_equations(self.equations)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def violation(self, point: Sequence) -> Optional[AffineInequality]:
        for row in self.inequalities:
            if row.evaluate(point) < 0:
                return row
        for row in self.equations:
            if row.evaluate(point) != 0:
                return row
        return None

    def contains(self, point: Sequence) -> bool:
        return self.violation(point) is None

    @cached_property
    def _generators(self):
        return _generators_of(self)

    @property
    def is_bounded(self) -> bool:
        _, rays, lines = self._generators
        return not rays and not lines

    @cached_property
    def vertices(self) -> "VPolytope":
        return vertices_of(self)

    def scaled_constants(self, factor: int) -> "HPolytope":
        return HPolytope(
            coords=self.coords,
            inequalities=tuple(AffineInequality.make(r.const * factor, r.coeffs) for r in self.inequalities),
            equations=tuple(AffineInequality.make(r.const * factor, r.coeffs) for r in self.equations),
        )

    def to_text(self, prefix: str = "v") -> str:
        lines = [f"0 <= {row.format(self.coords, prefix)}" for row in self.inequalities]
        lines += [f"0 == {row.format(self.coords, prefix)}" for row in self.equations]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "coords": [lam.name for lam in self.coords],
            "inequalities": [row.to_json() for row in self.inequalities],
            "equations": [row.to_json() for row in self.equations],
        }


@dataclass
class VPolytope:
    coords: Coordinates
    points: Tuple[Point, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.coords = tuple(self.coords)
        self.points = tuple(sorted({as_point(p) for p in self.points}))
        for p in self.points:
            if len(p) != len(self.coords):
                raise ValueError(f"Point {p} does not match the {len(self.coords)} coordinates")

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def is_empty(self) -> bool:
        return not self.points

    @cached_property
    def _hull(self) -> Tuple["VPolytope", HPolytope]:
        return hull(self)

    @property
    def vertices(self) -> "VPolytope":
        return self._hull[0]

    @property
    def facets(self) -> HPolytope:
        return self._hull[1]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for p in self.points for x in p)

    def denominator(self) -> int:
        """Least common denominator of the point coordinates."""
        return reduce(lcm, (x.denominator for p in self.points for x in p), 1)

    def to_json(self) -> dict:
        return {"coords": [lam.name for lam in self.coords], "vertices": [[str(x) for x in p] for p in self.points]}


def _matrix(rows: List[List[Fraction]], rep_type, linear: bool = False):
    mat = cdd.Matrix(rows, linear=linear, number_type="fraction")
    mat.rep_type = rep_type
    return mat


def _rows(mat) -> Tuple[List[Tuple[Fraction, ...]], List[Tuple[Fraction, ...]]]:
    """Split a cdd matrix into ordinary rows and linearity rows."""
    ordinary, linear = [], []
    for i in range(mat.row_size):
        row = tuple(Fraction(x) for x in mat[i])
        (linear if i in mat.lin_set else ordinary).append(row)
    return ordinary, linear


def hull(points: VPolytope) -> Tuple[VPolytope, HPolytope]:
    """Irredundant vertices and facets of the convex hull of a point set.

    Lower-dimensional hulls come back with their affine hull as equations.
    """
    if points.is_empty():
        raise ValueError("Cannot take the hull of an empty point set")
    generators = _matrix([[1, *p] for p in points.points], cdd.RepType.GENERATOR)
    generators.canonicalize()
    vertex_rows, _ = _rows(generators)
    inequalities = cdd.Polyhedron(generators).get_inequalities()
    inequalities.canonicalize()
    facet_rows, equation_rows = _rows(inequalities)
    vertices = VPolytope(coords=points.coords, points=tuple(row[1:] for row in vertex_rows))
    facets = HPolytope(
        coords=points.coords,
        inequalities=tuple(AffineInequality.make(r[0], r[1:]) for r in facet_rows),
        equations=tuple(AffineInequality.make(r[0], r[1:]) for r in equation_rows),
    )
    return vertices, facets


def _generators_of(H: HPolytope):
    rows = [[r.const, *r.coeffs] for r in H.inequalities]
    mat = _matrix(rows, cdd.RepType.INEQUALITY) if rows else None
    if H.equations:
        eq_rows = [[r.const, *r.coeffs] for r in H.equations]
        if mat is None:
            mat = _matrix(eq_rows, cdd.RepType.INEQUALITY, linear=True)
        else:
            mat.extend(eq_rows, linear=True)
    if mat is None:
        raise UnboundedPolytopeError("An empty inequality system describes the whole space")
    generators = cdd.Polyhedron(mat).get_generators()
    ordinary, lines = _rows(generators)
    points = [row[1:] for row in ordinary if row[0] != 0]
    rays = [row[1:] for row in ordinary if row[0] == 0]
    return points, rays, lines


def vertices_of(H: HPolytope) -> VPolytope:
    """Exact vertex enumeration; an infeasible system gives an empty polytope."""
    points, rays, lines = H._generators
    if rays or lines:
        raise UnboundedPolytopeError(f"Polyhedron in {H.dimension} coordinates has {len(rays)} rays and {len(lines)} lines")
    if not points:
        return VPolytope(coords=H.coords)
    return hull(VPolytope(coords=H.coords, points=tuple(points)))[0]


def dilate(P: VPolytope, r) -> VPolytope:
    factor = Fraction(r)
    return VPolytope(coords=P.coords, points=tuple(tuple(factor * x for x in p) for p in P.vertices.points))


def minkowski_sum(P: VPolytope, Q: VPolytope) -> VPolytope:
    if P.coords != Q.coords:
        raise ValueError("Minkowski sums need a common coordinate system")
    sums = [tuple(a + b for a, b in zip(p, q)) for p, q in product(P.vertices.points, Q.vertices.points)]
    return VPolytope(coords=P.coords, points=tuple(sums)).vertices


@dataclass
class EqualityVerdict:
    equal: bool
    certificate: Optional[str] = None

    def __bool__(self):
        return self.equal


def _both(P) -> Tuple[VPolytope, HPolytope]:
    if isinstance(P, VPolytope):
        return P.vertices, P.facets
    return P.vertices, P


def equal_polytopes(A, B) -> EqualityVerdict:
    """Exact equality by mutual vertex containment.

    On failure the certificate names a vertex of one side and an inequality of
    the other side that it violates.
    """
    if A.coords != B.coords:
        return EqualityVerdict(equal=False, certificate="the polytopes live in different coordinate systems")
    va, ha = _both(A)
    vb, hb = _both(B)
    for name, vertices, other_name, other in (("first", va, "second", hb), ("second", vb, "first", ha)):
        for point in vertices.points:
            row = other.violation(point)
            if row is not None:
                coords = ", ".join(str(x) for x in point)
                relation = "=" if row in other.equations else "<="
                return EqualityVerdict(
                    equal=False,
                    certificate=f"vertex ({coords}) of the {name} polytope violates 0 {relation} "
                    f"{row.format(A.coords)} of the {other_name}",
                )
    if va.is_empty() != vb.is_empty():
        return EqualityVerdict(equal=False, certificate="exactly one of the polytopes is empty")
    return EqualityVerdict(equal=True)
