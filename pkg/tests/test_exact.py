"""
Unit tests for the exact arithmetic core.
Covers scalar coercion, polynomial and rational-function arithmetic, evaluation and Sturm root counts.
"""
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings as hyp_settings
from hypothesis import strategies as st

from app.core.exact import (
    Ordering,
    Polynomial,
    RationalFunction,
    compare,
    poly_gcd,
    rat_ops,
    rational,
    real_roots_above,
    rf_eval,
    rf_ops,
    to_dyadic,
)
from app.core.exceptions import DomainError, ExactDivisionError, PoleError

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=12)
polynomials = st.lists(fractions, max_size=4).map(Polynomial)
nonzero_polynomials = polynomials.filter(lambda p: not p.is_zero())
functions = st.builds(RationalFunction, polynomials, nonzero_polynomials)

n = Polynomial.variable()


@pytest.mark.parametrize("value, expected", [
    (3, Fraction(3)),
    ("63/100", Fraction(63, 100)),
    (" -4 / 6 ", Fraction(-2, 3)),
    (Fraction(10, 4), Fraction(5, 2)),
])
def test_rational_coerces_exact_inputs(value, expected):
    """Ints, strings and Fractions all become canonical Fractions."""
    assert rational(value) == expected


@pytest.mark.parametrize("value", [0.5, True, "abc", "1/0", None])
def test_rational_refuses_inexact_inputs(value):
    """Floats, booleans and malformed strings never enter the exact core."""
    with pytest.raises(DomainError):
        rational(value)


def test_compare_orders_by_cross_multiplication():
    assert compare(Fraction(1, 3), Fraction(1, 2)) is Ordering.LESS
    assert compare(Fraction(2, 4), Fraction(1, 2)) is Ordering.EQUAL
    assert compare(Fraction(-1, 7), Fraction(-1, 8)) is Ordering.LESS
    assert rat_ops("cmp", "3/4", "2/3") is Ordering.GREATER


def test_rat_ops_division_by_zero_carries_operands():
    with pytest.raises(ExactDivisionError) as excinfo:
        rat_ops("div", 5, 0)
    assert excinfo.value.dividend == 5
    assert excinfo.value.divisor == 0


def test_rat_ops_rejects_unknown_operation():
    with pytest.raises(DomainError):
        rat_ops("pow", 2, 3)


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    """Associativity, distributivity and inverses through rat_ops."""
    assert rat_ops("add", rat_ops("add", a, b), c) == rat_ops("add", a, rat_ops("add", b, c))
    assert rat_ops("mul", a, rat_ops("add", b, c)) == rat_ops("add", rat_ops("mul", a, b), rat_ops("mul", a, c))
    assert rat_ops("sub", a, a) == 0
    if b != 0:
        assert rat_ops("mul", rat_ops("div", a, b), b) == a


@pytest.mark.parametrize("x, bits, floor, ceil", [
    (Fraction(1, 3), 4, Fraction(5, 16), Fraction(3, 8)),
    (Fraction(-1, 3), 4, Fraction(-3, 8), Fraction(-5, 16)),
    (Fraction(3, 4), 2, Fraction(3, 4), Fraction(3, 4)),
])
def test_to_dyadic_rounds_outward(x, bits, floor, ceil):
    assert to_dyadic(x, bits, "floor") == floor
    assert to_dyadic(x, bits, "ceil") == ceil


def test_polynomial_strips_trailing_zeros_and_renders():
    p = Polynomial((1, -2, 2, 0, 0))
    assert p.degree == 2
    assert p.render() == "2*n^2 - 2*n + 1"
    assert Polynomial().degree == -1
    assert Polynomial().render() == "0"


def test_polynomial_divmod_reconstructs_dividend():
    a = (n - 1) * (n + 2) * (n - Fraction(1, 2)) + 7
    b = n * n + 3
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_polynomial_division_by_zero():
    with pytest.raises(ExactDivisionError):
        divmod(n + 1, Polynomial())


def test_poly_gcd_is_monic():
    a = (2 * n - 2) * (n + 5)
    b = (3 * n - 3) * (n - 4)
    assert poly_gcd(a, b) == n - 1


def test_rational_function_reduces_to_canonical_form():
    """Common factors cancel and the denominator is made monic."""
    f = RationalFunction((n - 1) * (n + 2), (2 * n - 2) * (n + 3))
    assert f.num == Polynomial((1, Fraction(1, 2)))
    assert f.den == n + 3
    assert f == RationalFunction(n + 2, 2 * n + 6)


def test_zero_function_is_stored_over_one():
    f = RationalFunction(Polynomial(), n * n + 1)
    assert f.is_zero()
    assert f.den == Polynomial.constant(1)


def test_rational_function_division_by_zero_function():
    with pytest.raises(ExactDivisionError):
        rf_ops("div", RationalFunction(n), RationalFunction(0))


def test_rf_eval_substitutes_exactly():
    f = RationalFunction(2 * n * n - 2 * n + 1, (n - 1) * (n - 1))
    assert rf_eval(f, 5) == Fraction(41, 16)
    assert rf_eval(f, "1/2") == Fraction(2)


def test_rf_eval_at_a_pole_names_the_denominator():
    f = RationalFunction(n + 1, (n - 1) * (n + 3))
    with pytest.raises(PoleError) as excinfo:
        rf_eval(f, 1)
    assert excinfo.value.point == 1
    assert "n^2" in excinfo.value.denominator
    assert isinstance(excinfo.value, ExactDivisionError)


@hyp_settings(max_examples=60, deadline=None)
@given(functions, functions, functions)
def test_rational_function_distributivity(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@hyp_settings(max_examples=60, deadline=None)
@given(functions, functions, st.integers(min_value=-20, max_value=20))
def test_evaluation_is_a_homomorphism(f, g, x):
    """rf_eval commutes with + and * wherever no denominator vanishes."""
    assume(f.den(x) != 0 and g.den(x) != 0)
    assert rf_eval(f + g, x) == rf_eval(f, x) + rf_eval(g, x)
    assert rf_eval(f * g, x) == rf_eval(f, x) * rf_eval(g, x)


@hyp_settings(max_examples=60, deadline=None)
@given(functions)
def test_canonical_form_is_idempotent(f):
    again = RationalFunction(f.num, f.den)
    assert again.num == f.num and again.den == f.den
    assert f.den.leading == 1


@pytest.mark.parametrize("poly, above, expected", [
    ((n - 1) * (n - 3) * (n + 2), 0, 2),
    ((n - 1) * (n - 3) * (n + 2), 1, 1),
    ((n - 1) * (n - 3) * (n + 2), 3, 0),
    (n * n + 1, -100, 0),
    ((n - 2) * (n - 2), 0, 1),
    ((2 * n - 1) * (n - 4) * (n - 5), Fraction(9, 2), 1),
    (Polynomial.constant(7), 0, 0),
])
def test_real_roots_above_counts_distinct_roots(poly, above, expected):
    """Roots strictly greater than the bound, each counted once."""
    assert real_roots_above(poly, above) == expected


def test_real_roots_above_rejects_zero_polynomial():
    with pytest.raises(DomainError):
        real_roots_above(Polynomial(), 0)
