"""A-model side: valuations of Plucker coordinates and the Newton-Okounkov polytope."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from algebra.laurent import LaurentPoly, default_order, exponent_vectors, lex_min_term, strongly_minimal_term
from network.chart import NetworkChart
from plabic.partitions import GrassmannShape, IndexSubset, Partition
from polytope.polytope import AffineInequality, HPolytope, VPolytope, dilate, equal_polytopes

ValuationVector = Tuple[int, ...]


class PolytopeMismatchError(RuntimeError):
    """Raised when the two constructions of the Newton-Okounkov polytope disagree."""


def chart_order(chart: NetworkChart) -> List[Partition]:
    return default_order(chart.variables)


def val(f: LaurentPoly, order: Sequence[Partition]) -> ValuationVector:
    """Exponent vector of the lexicographically minimal term of f."""
    if f.is_zero():
        raise ValueError("The valuation of zero is undefined")
    return lex_min_term(f, order)


def val_quotient(f: LaurentPoly, g: LaurentPoly, order: Sequence[Partition]) -> ValuationVector:
    return tuple(a - b for a, b in zip(val(f, order), val(g, order)))


@dataclass
class ValuationTable:
    shape: GrassmannShape
    order: Tuple[Partition, ...]
    rows: Dict[IndexSubset, ValuationVector] = field(default_factory=dict)

    def points(self) -> List[ValuationVector]:
        return [self.rows[J] for J in sorted(self.rows)]

    def to_tsv(self) -> str:
        header = "J\t" + "\t".join(lam.name for lam in self.order)
        lines = [header]
        for J in sorted(self.rows):
            lines.append("".join(str(i) for i in J) + "\t" + "\t".join(str(x) for x in self.rows[J]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "order": [lam.name for lam in self.order],
            "rows": {"".join(str(i) for i in J): list(self.rows[J]) for J in sorted(self.rows)},
        }


def valuation_table(chart: NetworkChart, order: Optional[Sequence[Partition]] = None) -> ValuationTable:
    order = tuple(order) if order is not None else tuple(chart_order(chart))
    table = ValuationTable(shape=chart.shape, order=order)
    for J, f in chart.plucker_polynomials().items():
        table.rows[J] = val(f, order)
    return table


def _hull_of(order: Sequence[Partition], points: Iterable[Sequence]) -> VPolytope:
    return VPolytope(coords=tuple(order), points=tuple(points)).vertices


def monomial_points(table: ValuationTable, r: int) -> List[ValuationVector]:
    """Valuations of all degree-r Plucker monomials; valuations add on products."""
    rows = table.points()
    sums = set()
    for chosen in combinations_with_replacement(rows, r):
        sums.add(tuple(int(x) for x in np.sum(np.array(chosen, dtype=np.int64), axis=0)))
    return sorted(sums)


def monomial_polytope(table: ValuationTable, r: int) -> VPolytope:
    """Hull of the degree-r monomial valuations, checked against the r-th dilation of the r=1 hull.

    Raises:
        PolytopeMismatchError: the two constructions differ.
    """
    if r < 1:
        raise ValueError(f"Dilation factor must be positive, got {r}")
    from_monomials = _hull_of(table.order, monomial_points(table, r))
    dilated = dilate(_hull_of(table.order, table.points()), r)
    verdict = equal_polytopes(from_monomials, dilated)
    if not verdict:
        raise PolytopeMismatchError(f"Monomial hull of degree {r} for {table.shape}: {verdict.certificate}")
    return from_monomials


def plucker_products(chart: NetworkChart, r: int) -> Dict[Tuple[IndexSubset, ...], LaurentPoly]:
    """Every degree-r monomial in the Plucker coordinates, keyed by its sorted index multiset."""
    polys = chart.plucker_polynomials()
    subsets = sorted(polys)
    products: Dict[Tuple[IndexSubset, ...], LaurentPoly] = {(): LaurentPoly.one()}
    for _ in range(r):
        products = {
            key + (J,): f * polys[J]
            for key, f in products.items()
            for J in subsets
            if not key or key[-1] <= J
        }
    return products


def span_valuations(chart: NetworkChart, r: int, order: Optional[Sequence[Partition]] = None) -> List[ValuationVector]:
    """val(L_r): the valuations of all nonzero linear combinations of degree-r Plucker monomials.

    Columns are the exponent vectors in increasing lex order, so the pivot
    columns of the row-reduced coefficient matrix are exactly the minimal
    exponents reachable in the span. Because of cancellation this can be a
    strict superset of the monomial valuations.
    """
    if r < 1:
        raise ValueError(f"Degree must be positive, got {r}")
    order = tuple(order) if order is not None else tuple(chart_order(chart))
    rows = []
    for f in plucker_products(chart, r).values():
        rows.append({vector: coeff for vector, (_, coeff) in zip(exponent_vectors(f, order), f.items())})
    columns = sorted({vector for row in rows for vector in row})
    position = {vector: j for j, vector in enumerate(columns)}
    entries = {i: {position[v]: ZZ(c) for v, c in row.items()} for i, row in enumerate(rows)}
    matrix = DomainMatrix(entries, (len(rows), len(columns)), ZZ).to_field()
    _, pivots = matrix.rref()
    return [columns[j] for j in pivots]


def valuation_hull(order: Sequence[Partition], points: Iterable[Sequence[int]], refinement: int = 1) -> VPolytope:
    """Hull of valuation points, shrunk by `refinement`."""
    if refinement > 1:
        points = [tuple(Fraction(x, refinement) for x in p) for p in points]
    return _hull_of(order, points)


def no_polytope(
    chart: NetworkChart, r: int, order: Optional[Sequence[Partition]] = None, refinement: int = 1
) -> VPolytope:
    """NO^r as the hull of val(L_r).

    With `refinement` m > 1 the hull of val(L_{mr}) is shrunk by m. This is the
    r-th dilation of the Newton-Okounkov body seen at level m, and it can be
    strictly larger than the hull of val(L_r) when the body has vertices off
    the lattice.
    """
    if r < 1 or refinement < 1:
        raise ValueError(f"Dilation factor and refinement must be positive, got {r} and {refinement}")
    order = tuple(order) if order is not None else tuple(chart_order(chart))
    return valuation_hull(order, span_valuations(chart, r * refinement, order), refinement)


def check_strong_minimality(chart: NetworkChart, orders: Iterable[Sequence[Partition]]) -> List[str]:
    """Every Plucker polynomial must have a strongly minimal term equal to its lex-minimal term in every order."""
    problems = []
    orders = [tuple(o) for o in orders]
    base = tuple(chart_order(chart))
    for J, f in chart.plucker_polynomials().items():
        strong = strongly_minimal_term(f, base)
        if strong is None:
            problems.append(f"P{J} has no strongly minimal term")
            continue
        by_name = dict(zip(base, strong))
        for order in orders:
            expected = tuple(by_name[lam] for lam in order)
            if lex_min_term(f, order) != expected:
                problems.append(f"P{J}: lex-minimal term depends on the order {[str(x) for x in order]}")
                break
    return problems


def random_orders(variables: Sequence[Partition], count: int, rng: np.random.Generator) -> List[Tuple[Partition, ...]]:
    variables = list(variables)
    return [tuple(variables[i] for i in rng.permutation(len(variables))) for _ in range(count)]


def _rectangle_parts(lam: Partition) -> Tuple[int, int]:
    if not lam.is_rectangle() or lam.is_empty():
        raise ValueError(f"{lam} is not a nonempty rectangle")
    return lam.length, lam.row(0)


def f_coordinates(V: Mapping[Partition, int]) -> Dict[Partition, int]:
    """f_{i x j} = v_{i x j} - v_{(i-1) x (j-1)}, with v of the empty diagram equal to zero."""
    out = {}
    for lam, value in V.items():
        i, j = _rectangle_parts(lam)
        out[lam] = value - V.get(Partition.rectangle(i - 1, j - 1), 0)
    return out


def from_f_coordinates(F: Mapping[Partition, int]) -> Dict[Partition, int]:
    out = {}
    for lam in F:
        i, j = _rectangle_parts(lam)
        out[lam] = sum(F[Partition.rectangle(i - t, j - t)] for t in range(min(i, j)))
    return out


def f_inequalities(H: HPolytope) -> HPolytope:
    """Rewrite a system in rectangle coordinates in terms of the f-variables.

    Since v_{i x j} is the sum of f along its diagonal, the f-coefficient of a
    rectangle collects the v-coefficients of the rectangles above it on that diagonal.
    """
    coords = H.coords
    index = {lam: pos for pos, lam in enumerate(coords)}

    def convert(row: AffineInequality) -> AffineInequality:
        coeffs = [0] * len(coords)
        for lam, a in zip(coords, row.coeffs):
            if not a:
                continue
            i, j = _rectangle_parts(lam)
            for t in range(min(i, j)):
                coeffs[index[Partition.rectangle(i - t, j - t)]] += a
        return AffineInequality.make(row.const, coeffs)

    return HPolytope(
        coords=coords,
        inequalities=tuple(convert(r) for r in H.inequalities),
        equations=tuple(convert(r) for r in H.equations),
    )


def satisfies_tableau_conditions(shape: GrassmannShape, V: Mapping[Partition, int]) -> bool:
    """Conditions on an array V[i x j] over the nonempty rectangles, with the empty entry zero:
    first row and column at most 1, diagonal steps at most 1, V[1x1] >= 0,
    weak increase along rows and columns, and a positive entry forces its
    diagonal successor to be exactly one larger."""
    a, k = shape.rows, shape.k

    def at(i: int, j: int) -> int:
        return V[Partition.rectangle(i, j)] if i > 0 and j > 0 else 0

    if at(1, 1) < 0:
        return False
    for i in range(1, a + 1):
        for j in range(1, k + 1):
            value = at(i, j)
            if (i == 1 or j == 1) and value > 1:
                return False
            if value > at(i - 1, j - 1) + 1:
                return False
            if j > 1 and at(i, j - 1) > value:
                return False
            if i > 1 and at(i - 1, j) > value:
                return False
            if value > 0 and i < a and j < k and at(i + 1, j + 1) != value + 1:
                return False
    return True


def tableau_arrays(shape: GrassmannShape, order: Optional[Sequence[Partition]] = None) -> List[Tuple[int, ...]]:
    """All arrays obeying the tableau conditions, as points in the given coordinate order."""
    order = tuple(order) if order is not None else tuple(default_order(shape.rectangles()))
    ceiling = min(shape.rows, shape.k)
    arrays = []
    for values in product(range(ceiling + 1), repeat=len(order)):
        V = dict(zip(order, values))
        if satisfies_tableau_conditions(shape, V):
            arrays.append(tuple(values))
    return sorted(arrays)
