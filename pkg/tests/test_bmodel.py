import pytest

from algebra.laurent import Q, LaurentPoly
from algebra.minors import sample_generic_matrix
from duality.amodel import no_polytope
from duality.bmodel import (
    PluckerForm,
    SuperpotentialError,
    check_superpotential,
    cluster_form,
    evaluate_oracle,
    mutate_superpotential,
    q_polytope,
    rectangle_inequalities,
    rectangles_form,
    rectangles_term_count,
    superpotential_in_cluster,
    superpotential_plucker,
    superpotential_rectangles,
    tropical_inequalities,
    tropicalize,
)
from plabic.partitions import GrassmannShape
from plabic.search import exchange_edges
from polytope.polytope import AffineInequality, equal_polytopes

from conftest import lam, x

ORDER_35 = tuple(lam(s) for s in ("3,3", "2,2", "1,1", "3", "2", "1"))

GOLDEN_Q1_35 = {
    AffineInequality.make(0, [0, 0, 0, 0, 0, 1]),
    AffineInequality.make(0, [0, 0, 1, 0, 0, -1]),
    AffineInequality.make(0, [0, 1, 0, 0, -1, -1]),
    AffineInequality.make(0, [1, 0, 0, -1, -1, 0]),
    AffineInequality.make(1, [-1, 0, 0, 0, 1, 0]),
    AffineInequality.make(0, [0, 0, 0, 0, 1, -1]),
    AffineInequality.make(0, [0, 0, 0, 1, -1, 0]),
    AffineInequality.make(0, [0, 1, -1, 0, 0, -1]),
    AffineInequality.make(0, [1, -1, 0, 0, -1, 1]),
}


@pytest.mark.parametrize("k,n,q_index", [(3, 5, 2), (2, 4, 2), (2, 5, 3)])
def test_plucker_form_has_n_summands_and_one_q(k, n, q_index):
    terms = superpotential_plucker(GrassmannShape(k=k, n=n))
    assert len(terms) == n
    assert [t.m for t in terms if t.has_q] == [q_index]
    assert all(len(t.numerator) == k and len(t.denominator) == k for t in terms)
    assert next(t for t in terms if t.has_q).to_text().startswith("q*p[")


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 5), (3, 6)])
def test_rectangles_expansion_term_count(k, n):
    shape = GrassmannShape(k=k, n=n)
    W = superpotential_rectangles(shape)
    assert len(W) == rectangles_term_count(shape)
    assert all(c == 1 for c in W.coefficients())


def test_rectangles_expansion_text(gr35):
    terms = superpotential_rectangles(gr35).to_fraction_text().split(" + ")
    assert len(terms) == 9
    assert "p[1]" in terms
    assert "p[2]/p[1]" in terms
    assert "q*p[2]/p[3,3]" in terms


def test_golden_q_polytope_of_the_rectangles_cluster(gr35, chart35):
    Q1 = q_polytope(gr35, (), 1, ORDER_35)
    assert set(Q1.inequalities) == GOLDEN_Q1_35
    NO1 = no_polytope(chart35, 1)
    assert len(NO1.points) == 10
    assert set(NO1.facets.inequalities) == GOLDEN_Q1_35
    assert equal_polytopes(NO1, Q1)


def test_direct_rectangle_inequalities_match_the_tropicalization(gr24, gr25, gr35):
    for shape in (gr24, gr25, gr35):
        for r in (1, 2):
            direct = rectangle_inequalities(shape, r)
            tropical = tropicalize(superpotential_rectangles(shape), r, direct.coords)
            assert direct.inequalities == tropical.inequalities


def test_dilation_only_moves_the_q_constant(gr35):
    W = superpotential_rectangles(gr35)
    once = tropical_inequalities(W, 1)
    twice = tropical_inequalities(W, 2)
    assert [t.coeffs for t in once] == [t.coeffs for t in twice]
    assert sorted(t.const for t in twice) == [0] * 8 + [2]
    assert "2 + v[2] - v[3,3]" in [t.format() for t in twice]


def test_negative_or_high_q_terms_are_rejected():
    with pytest.raises(SuperpotentialError):
        check_superpotential(x("1") - x("2"))
    with pytest.raises(SuperpotentialError):
        check_superpotential(LaurentPoly.variable(Q, 2) * x("1"))
    check_superpotential(LaurentPoly.variable(Q) * x("1") + x("2"))


def test_mutation_there_and_back(class25):
    for edge in exchange_edges(class25):
        source = class25.members[edge.source]
        W = superpotential_in_cluster(class25.shape, source.path)
        there = mutate_superpotential(W, edge.step)
        assert edge.step.replacement in there.variables()
        assert edge.step.mutated not in there.variables()
        assert mutate_superpotential(there, edge.step.inverse()) == W


@pytest.mark.parametrize("fixture", ["class24", "class25", "class35"])
def test_every_cluster_expansion_is_positive_with_integral_q_polytope(request, fixture):
    move_class = request.getfixturevalue(fixture)
    for member in move_class:
        W = superpotential_in_cluster(move_class.shape, member.path)
        check_superpotential(W)
        assert q_polytope(move_class.shape, member.path, 1).vertices.is_integral()


@pytest.mark.parametrize("fixture", ["class24", "class25", "class35"])
def test_cluster_expansions_agree_with_the_plucker_form(request, fixture, rng):
    move_class = request.getfixturevalue(fixture)
    shape = move_class.shape
    reference = PluckerForm(shape=shape)
    forms = [rectangles_form(shape)] + [cluster_form(shape, m.path) for m in move_class]
    subsets = set(reference.required_minors())
    for form in forms:
        subsets |= set(form.required_minors())
    for _ in range(100):
        M = sample_generic_matrix(shape, rng, sorted(subsets))
        q_val = int(rng.integers(0, 6))
        expected = evaluate_oracle(M, q_val, reference)
        for form in forms:
            assert evaluate_oracle(M, q_val, form) == expected


def test_q_polytope_needs_a_positive_dilation(gr24):
    with pytest.raises(ValueError):
        q_polytope(gr24, (), 0)
