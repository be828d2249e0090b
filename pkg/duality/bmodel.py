"""B-model side: the superpotential, its cluster expansions, and its tropicalization."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Protocol, Sequence, Tuple

from algebra.laurent import Q, LaurentPoly, Variable, default_order, substitute
from algebra.minors import VanishingMinorError, minor
from plabic.moves import MutationStep
from plabic.partitions import GrassmannShape, IndexSubset, Partition, frozen_labels, west_subset
from plabic.search import replay_path
from polytope.polytope import AffineInequality, Coordinates, HPolytope

SuperpotentialExpr = LaurentPoly


class SuperpotentialError(RuntimeError):
    """Raised when a superpotential expansion has a negative coefficient or a q-degree above one."""


@dataclass(frozen=True)
class PluckerTerm:
    m: int
    numerator: IndexSubset
    denominator: IndexSubset
    has_q: bool

    def to_text(self) -> str:
        num = "".join(str(i) for i in self.numerator)
        den = "".join(str(i) for i in self.denominator)
        return f"{'q*' if self.has_q else ''}p[{num}]/p[{den}]"


def superpotential_plucker(shape: GrassmannShape) -> List[PluckerTerm]:
    """The n Plucker ratios p(J_m^+)/p(J_m); the term m = n - k carries q."""
    return [
        PluckerTerm(m=label.i, numerator=label.J_plus, denominator=label.J, has_q=label.i == shape.rows)
        for label in frozen_labels(shape)
    ]


def plucker_variable(lam: Partition) -> LaurentPoly:
    """p_lam, with the empty diagram normalized to 1."""
    return LaurentPoly.one() if lam.is_empty() else LaurentPoly.variable(lam)


def _rect(i: int, j: int) -> LaurentPoly:
    return plucker_variable(Partition.rectangle(i, j))


def superpotential_rectangles(shape: GrassmannShape) -> SuperpotentialExpr:
    """Expansion in the rectangles cluster, one term per arrow of the grid quiver."""
    a, k = shape.rows, shape.k
    W = _rect(1, 1)
    for i in range(2, a + 1):
        for j in range(1, k + 1):
            W = W + _rect(i, j) * _rect(i - 2, j - 1) * _rect(i - 1, j - 1) ** -1 * _rect(i - 1, j) ** -1
    W = W + LaurentPoly.variable(Q) * _rect(a - 1, k - 1) * _rect(a, k) ** -1
    for i in range(1, a + 1):
        for j in range(2, k + 1):
            W = W + _rect(i, j) * _rect(i - 1, j - 2) * _rect(i - 1, j - 1) ** -1 * _rect(i, j - 1) ** -1
    check_superpotential(W)
    return W


def rectangles_term_count(shape: GrassmannShape) -> int:
    a, k = shape.rows, shape.k
    return 2 * k * a - k - a + 2


def check_superpotential(W: SuperpotentialExpr):
    for mono, coeff in W.items():
        if coeff < 0:
            raise SuperpotentialError(f"Negative coefficient {coeff} in {W.to_fraction_text()}")
        q_degree = dict(mono).get(Q, 0)
        if q_degree not in (0, 1):
            raise SuperpotentialError(f"Term with q-degree {q_degree} in {W.to_fraction_text()}")


def mutate_superpotential(W: SuperpotentialExpr, step: MutationStep) -> SuperpotentialExpr:
    """Substitute p_mu1 = (p_mu2 p_mu4 + p_mu3 p_mu5) / p_mu1'."""
    (n0, n2), (n1, n3) = step.exchange_pairs()
    numerator = plucker_variable(n0) * plucker_variable(n2) + plucker_variable(n1) * plucker_variable(n3)
    W = substitute(W, step.mutated, numerator, plucker_variable(step.replacement))
    check_superpotential(W)
    return W


def superpotential_along(W: SuperpotentialExpr, steps: Iterable[MutationStep]) -> SuperpotentialExpr:
    for step in steps:
        W = mutate_superpotential(W, step)
    return W


def superpotential_in_cluster(shape: GrassmannShape, path: Sequence[Partition] = ()) -> SuperpotentialExpr:
    """W in the cluster of the graph reached from G_rec by square moves at `path`."""
    replay = replay_path(shape, path)
    return superpotential_along(superpotential_rectangles(shape), replay.steps)


@dataclass(frozen=True)
class TropicalInequality:
    """const + sum(a_mu * v_mu) >= 0 for one monomial of W."""

    const: int
    coeffs: Tuple[Tuple[Partition, int], ...]

    def affine(self, coords: Coordinates) -> AffineInequality:
        exps = dict(self.coeffs)
        stray = [lam for lam in exps if lam not in coords]
        if stray:
            raise ValueError(f"Variables {[str(x) for x in stray]} are not coordinates")
        return AffineInequality.make(self.const, [exps.get(lam, 0) for lam in coords])

    def format(self, prefix: str = "v") -> str:
        return AffineInequality.make(self.const, [a for _, a in self.coeffs]).format(
            tuple(lam for lam, _ in self.coeffs), prefix
        )


def tropical_inequalities(W: SuperpotentialExpr, r: int) -> List[TropicalInequality]:
    """Trop of each monomial: positive coefficients are valuation 0 and q contributes r."""
    rows = []
    for mono, _ in W.sorted_fraction_terms():
        exps = dict(mono)
        q_degree = exps.pop(Q, 0)
        rows.append(TropicalInequality(const=r * q_degree, coeffs=tuple(sorted(exps.items()))))
    return rows


def tropicalize(W: SuperpotentialExpr, r: int, coords: Optional[Coordinates] = None) -> HPolytope:
    if coords is None:
        coords = tuple(default_order(W.variables()))
    return HPolytope(coords=tuple(coords), inequalities=tuple(t.affine(coords) for t in tropical_inequalities(W, r)))


def q_polytope(
    shape: GrassmannShape,
    path: Sequence[Partition],
    r: int,
    coords: Optional[Coordinates] = None,
) -> HPolytope:
    if r < 1:
        raise ValueError(f"Dilation factor must be positive, got {r}")
    return tropicalize(superpotential_in_cluster(shape, path), r, coords)


def rectangle_inequalities(shape: GrassmannShape, r: int, coords: Optional[Coordinates] = None) -> HPolytope:
    """The inequality system of the rectangles cluster, written out directly:
    v[1x1] >= 0, v[a x k] - v[(a-1) x (k-1)] <= r, and the column and row
    increment conditions."""
    a, k = shape.rows, shape.k
    coords = tuple(coords) if coords is not None else tuple(default_order(shape.rectangles()))
    index = {lam: pos for pos, lam in enumerate(coords)}

    def row(const: int, terms: Dict[Tuple[int, int], int]) -> AffineInequality:
        coeffs = [0] * len(coords)
        for (i, j), c in terms.items():
            if i > 0 and j > 0:
                coeffs[index[Partition.rectangle(i, j)]] += c
        return AffineInequality.make(const, coeffs)

    rows = [row(0, {(1, 1): 1}), row(r, {(a, k): -1, (a - 1, k - 1): 1})]
    for i in range(2, a + 1):
        for j in range(1, k + 1):
            rows.append(row(0, {(i, j): 1, (i - 1, j - 1): -1, (i - 1, j): -1, (i - 2, j - 1): 1}))
    for i in range(1, a + 1):
        for j in range(2, k + 1):
            rows.append(row(0, {(i, j): 1, (i - 1, j - 1): -1, (i, j - 1): -1, (i - 1, j - 2): 1}))
    return HPolytope(coords=coords, inequalities=tuple(rows))


class SuperpotentialForm(Protocol):
    name: str

    def required_minors(self) -> List[IndexSubset]:
        ...

    def evaluate(self, M: Sequence[Sequence[int]], q_val: Fraction) -> Fraction:
        ...


def _checked_minor(M: Sequence[Sequence[int]], J: IndexSubset) -> int:
    value = minor(M, J)
    if value == 0:
        raise VanishingMinorError(f"Minor {J} vanishes")
    return value


@dataclass
class PluckerForm:
    shape: GrassmannShape
    name: str = "plucker"

    def required_minors(self) -> List[IndexSubset]:
        return sorted({t.denominator for t in superpotential_plucker(self.shape)})

    def evaluate(self, M: Sequence[Sequence[int]], q_val: Fraction) -> Fraction:
        total = Fraction(0)
        for term in superpotential_plucker(self.shape):
            ratio = Fraction(minor(M, term.numerator), _checked_minor(M, term.denominator))
            total += ratio * q_val if term.has_q else ratio
        return total


@dataclass
class LaurentForm:
    """A cluster expansion evaluated at p_mu = minor(W(mu)) / minor(1..k)."""

    shape: GrassmannShape
    expression: SuperpotentialExpr
    name: str = "cluster"

    def required_minors(self) -> List[IndexSubset]:
        subsets = {tuple(range(1, self.shape.k + 1))}
        for v in self.expression.variables():
            if isinstance(v, Partition):
                subsets.add(west_subset(v, self.shape))
        return sorted(subsets)

    def evaluate(self, M: Sequence[Sequence[int]], q_val: Fraction) -> Fraction:
        base = _checked_minor(M, tuple(range(1, self.shape.k + 1)))
        values: Dict[Variable, Fraction] = {Q: Fraction(q_val)}
        for v in self.expression.variables():
            if isinstance(v, Partition):
                values[v] = Fraction(_checked_minor(M, west_subset(v, self.shape)), base)
        return self.expression.evaluate(values)


def rectangles_form(shape: GrassmannShape) -> LaurentForm:
    return LaurentForm(shape=shape, expression=superpotential_rectangles(shape), name="rectangles")


def cluster_form(shape: GrassmannShape, path: Sequence[Partition]) -> LaurentForm:
    return LaurentForm(shape=shape, expression=superpotential_in_cluster(shape, path), name="cluster")


def evaluate_oracle(M: Sequence[Sequence[int]], q_val, form: SuperpotentialForm) -> Fraction:
    """Exact value of a superpotential form at the point of the Grassmannian spanned by the rows of M.

    Raises:
        VanishingMinorError: a denominator minor is zero; draw another matrix.
    """
    return form.evaluate(M, Fraction(q_val))
