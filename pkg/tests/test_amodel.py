from itertools import permutations

import pytest

from algebra.laurent import LaurentPoly
from duality.amodel import (
    chart_order,
    check_strong_minimality,
    f_coordinates,
    f_inequalities,
    from_f_coordinates,
    monomial_points,
    monomial_polytope,
    no_polytope,
    random_orders,
    satisfies_tableau_conditions,
    span_valuations,
    tableau_arrays,
    val,
    val_quotient,
    valuation_table,
)
from duality.bmodel import rectangle_inequalities
from duality.oracle import dimension_oracle
from network.chart import chart_from_path
from polytope.lattice import lattice_points
from polytope.polytope import equal_polytopes

from conftest import lam, x

GOLDEN_VALUATIONS_35 = {
    (1, 2): "000000",
    (1, 3): "100000",
    (1, 4): "110000",
    (1, 5): "111000",
    (2, 3): "100100",
    (2, 4): "110100",
    (2, 5): "111100",
    (3, 4): "210110",
    (3, 5): "211110",
    (4, 5): "221111",
}


def digits(text: str):
    return tuple(int(c) for c in text)


def test_default_order_of_the_rectangles_chart(chart35):
    assert chart_order(chart35) == [lam(s) for s in ("3,3", "2,2", "1,1", "3", "2", "1")]


def test_golden_valuation_table(chart35):
    table = valuation_table(chart35)
    assert table.rows == {J: digits(v) for J, v in GOLDEN_VALUATIONS_35.items()}
    tsv = table.to_tsv().splitlines()
    assert tsv[0] == "J\t3,3\t2,2\t1,1\t3\t2\t1"
    assert tsv[-1] == "45\t2\t2\t1\t1\t1\t1"
    assert table.to_json()["rows"]["34"] == [2, 1, 0, 1, 1, 0]


def test_valuation_helpers():
    order = [lam("1"), lam("2")]
    f = x("1") * x("2") + x("2") ** 2
    assert val(f, order) == (0, 2)
    assert val_quotient(f, x("2"), order) == (0, 1)
    with pytest.raises(ValueError):
        val(LaurentPoly.zero(), order)


def test_no_polytope_of_degree_one_is_the_valuation_hull(chart35):
    NO = no_polytope(chart35, 1)
    assert set(NO.points) == {digits(v) for v in GOLDEN_VALUATIONS_35.values()}
    assert set(lattice_points(NO)) == set(NO.points)


def test_no_polytope_scales_with_the_degree(gr24):
    chart = chart_from_path(gr24)
    table = valuation_table(chart)
    assert len(monomial_points(table, 2)) == 20
    assert span_valuations(chart, 2) == monomial_points(table, 2)
    assert len(lattice_points(no_polytope(chart, 2))) == 20
    assert len(lattice_points(no_polytope(chart, 3))) == 50
    assert equal_polytopes(no_polytope(chart, 3), monomial_polytope(table, 3))
    with pytest.raises(ValueError):
        no_polytope(chart, 0)
    with pytest.raises(ValueError):
        monomial_polytope(table, 0)


def test_span_valuations_cover_the_monomials(class35):
    for member in class35:
        chart = chart_from_path(class35.shape, member.path)
        table = valuation_table(chart)
        spanned = span_valuations(chart, 2, table.order)
        assert set(monomial_points(table, 2)) <= set(spanned)
        assert len(spanned) == dimension_oracle(class35.shape, 2)
        assert spanned == sorted(spanned)


def test_refined_no_polytope_of_the_rectangles_chart(chart35):
    assert equal_polytopes(no_polytope(chart35, 1, refinement=2), no_polytope(chart35, 1))


@pytest.mark.parametrize("fixture", ["gr24", "gr25", "gr35"])
def test_rectangles_lattice_points_are_the_tableau_arrays(request, fixture):
    shape = request.getfixturevalue(fixture)
    chart = chart_from_path(shape)
    order = chart_order(chart)
    assert lattice_points(no_polytope(chart, 1, order)) == tableau_arrays(shape, order)


def test_tableau_conditions(gr35):
    order = [lam(s) for s in ("3,3", "2,2", "1,1", "3", "2", "1")]
    assert len(tableau_arrays(gr35)) == 10
    assert satisfies_tableau_conditions(gr35, dict(zip(order, digits("221111"))))
    assert not satisfies_tableau_conditions(gr35, dict(zip(order, digits("111111"))))
    assert not satisfies_tableau_conditions(gr35, dict(zip(order, digits("000010"))))
    assert not satisfies_tableau_conditions(gr35, dict(zip(order, digits("200000"))))


def test_f_coordinates_of_tableau_arrays_are_binary(gr35):
    order = [lam(s) for s in ("3,3", "2,2", "1,1", "3", "2", "1")]
    for values in tableau_arrays(gr35, order):
        V = dict(zip(order, values))
        F = f_coordinates(V)
        assert set(F.values()) <= {0, 1}
        assert from_f_coordinates(F) == V
    with pytest.raises(ValueError):
        f_coordinates({lam("2,1"): 1})


def test_f_inequalities_have_unit_coefficients(gr35):
    H = f_inequalities(rectangle_inequalities(gr35, 1))
    for row in H.inequalities:
        assert set(row.coeffs) <= {-1, 0, 1}
    assert len(lattice_points(H)) == 10


def test_strong_minimality_in_every_order(class24):
    assert len(class24) == 2
    for member in class24:
        chart = chart_from_path(class24.shape, member.path)
        assert check_strong_minimality(chart, permutations(chart.variables)) == []


def test_strong_minimality_in_random_orders(class25, rng):
    for member in class25:
        chart = chart_from_path(class25.shape, member.path)
        assert check_strong_minimality(chart, random_orders(chart.variables, 20, rng)) == []


def test_valuations_depend_on_the_order_only_through_a_permutation(chart35, rng):
    base = valuation_table(chart35)
    for order in random_orders(chart35.variables, 5, rng):
        table = valuation_table(chart35, order)
        position = {v: i for i, v in enumerate(base.order)}
        for J, row in table.rows.items():
            assert row == tuple(base.rows[J][position[v]] for v in order)
