from fractions import Fraction
from itertools import permutations

import pytest

from algebra.laurent import (
    Q,
    InexactDivisionError,
    LaurentPoly,
    default_order,
    exact_div,
    lex_min_term,
    strongly_minimal_term,
    substitute,
)
from conftest import lam, x


def test_arithmetic_and_cancellation():
    f = x("1") + x("2")
    assert f * f == x("1") ** 2 + 2 * x("1") * x("2") + x("2") ** 2
    assert f - x("1") == x("2")
    assert (f - f).is_zero()
    assert x("1") * x("1") ** -1 == 1


def test_negative_power_of_polynomial_is_rejected():
    with pytest.raises(InexactDivisionError):
        (x("1") + 1) ** -1
    with pytest.raises(InexactDivisionError):
        (2 * x("1")) ** -1


def test_exact_division_by_polynomials():
    a, b = x("1"), x("2")
    product = (1 + a) * (a + b) * b ** -2
    assert exact_div(product, 1 + a) == (a + b) * b ** -2
    assert exact_div(6 * a * b, 3 * b) == 2 * a
    with pytest.raises(InexactDivisionError):
        exact_div(a + b, 1 + a)
    with pytest.raises(InexactDivisionError):
        exact_div(3 * a, 2 * a)


def test_substitution_is_the_exchange_relation():
    a, b, c, d, e = (x(name) for name in ("1", "2", "1,1", "2,1", "2,2"))
    f = a * b + c * b ** 2
    exchange = a * c + d * e
    replaced = substitute(f, lam("2"), exchange, x("3"))
    assert replaced == a * exchange * x("3") ** -1 + c * exchange ** 2 * x("3") ** -2
    # substituting back recovers the original expression
    assert substitute(replaced, lam("3"), exchange, b) == f
    with pytest.raises(InexactDivisionError):
        substitute(a * b ** -1, lam("2"), exchange, x("3"))


def test_evaluate_with_q():
    f = LaurentPoly.variable(Q) * x("2") * x("3,3") ** -1 + x("1")
    value = f.evaluate({Q: Fraction(2), lam("2"): Fraction(3), lam("3,3"): Fraction(4), lam("1"): Fraction(1, 2)})
    assert value == Fraction(2)


def test_text_forms():
    f = x("3") * x("2,2") * x("3,3") * (1 + x("2"))
    assert f.to_text("x") == "x[3]*x[2,2]*x[3,3]*(1+x[2])"
    W = x("2") * x("1") ** -1 + LaurentPoly.variable(Q) * x("2") * x("3,3") ** -1
    assert W.to_fraction_text() == "p[2]/p[1] + q*p[2]/p[3,3]"
    assert LaurentPoly.from_json(W.to_json()) == W


def test_default_order_matches_the_valuation_table_columns():
    names = ["1", "2", "3", "1,1", "2,2", "3,3"]
    order = default_order([lam(n) for n in names] + [Q])
    assert [p.name for p in order] == ["3,3", "2,2", "1,1", "3", "2", "1"]


def test_minimal_terms():
    order = [lam("1"), lam("2")]
    f = x("1") * x("2") + x("1") ** 2 * x("2") + x("1") * x("2") ** 3
    assert lex_min_term(f, order) == (1, 1)
    assert strongly_minimal_term(f, order) == (1, 1)
    g = x("1") + x("2")
    assert strongly_minimal_term(g, order) is None
    assert lex_min_term(g, order) == (0, 1)
    assert lex_min_term(g, list(reversed(order))) == (0, 1)
    for o in permutations(order):
        assert lex_min_term(f, list(o)) == tuple(1 for _ in o)
    with pytest.raises(ValueError):
        lex_min_term(LaurentPoly.zero(), order)
