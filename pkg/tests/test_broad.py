"""
Unit tests for k-broad exponents.
Validates both closed forms of the product, the chain inequality and the squared product bounds.
"""
from fractions import Fraction

import pytest

from app.broad.service import (
    appendix_product_bounds,
    bounds_sweep,
    chain_inequality_check,
    chain_sweep,
    dyadic_product,
    dyadic_product_factorial,
    p_broad,
    product_terms,
)
from app.core.exceptions import DomainError


def test_broad_exponent_five_three():
    """p_5(3) = 2 + 6/(8 + 2*16/21) = 2 + 63/100."""
    result = p_broad(5, 3)
    assert result.product == Fraction(16, 21)
    assert result.p == 2 + Fraction(63, 100)
    assert result.display == "2 + 63/100"
    assert result.closed_forms_agree
    assert result.bounds_certificate.ok
    assert result.boundary is False


@pytest.mark.parametrize("k, n, expected", [
    (2, 3, Fraction(4, 5)),
    (3, 5, Fraction(16, 21)),
    (2, 4, Fraction(24, 35)),
    (4, 4, Fraction(1)),
])
def test_dyadic_product_values(k, n, expected):
    assert dyadic_product(k, n) == expected
    assert dyadic_product_factorial(k, n) == expected


def test_boundary_k_equals_n_has_empty_product():
    """k = n is admitted; the record flags it and carries no bounds certificate."""
    result = p_broad(6, 6)
    assert result.product == 1
    assert result.p == 2 + Fraction(2, 5)
    assert result.boundary is True
    assert result.bounds_certificate is None


@pytest.mark.parametrize("n, k", [(1, 2), (5, 1), (4, 5), (0, 0)])
def test_broad_rejects_out_of_range(n, k):
    with pytest.raises(DomainError):
        p_broad(n, k)


@pytest.mark.parametrize("n, k", [(7, 2), (30, 11), (101, 50)])
def test_product_terms_are_unreduced_product(n, k):
    a, b = product_terms(k, n)
    assert Fraction(a, b) == dyadic_product(k, n)


@pytest.mark.parametrize("n", [3, 10, 25, 60])
def test_broad_exponent_decreases_in_k(n):
    values = [p_broad(n, k).p for k in range(2, n + 1)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > 2 for v in values)


@pytest.mark.parametrize("i", [1, 2, 3, 10, 1000])
def test_chain_inequality(i):
    assert chain_inequality_check(i)


def test_chain_inequality_rejects_zero():
    with pytest.raises(DomainError):
        chain_inequality_check(0)


def test_product_bounds_reject_boundary():
    with pytest.raises(DomainError):
        appendix_product_bounds(5, 5)


def test_product_bounds_small_sweep():
    assert bounds_sweep(40) is None
    assert chain_sweep(2000) is None


@pytest.mark.slow
def test_closed_forms_agree_up_to_two_hundred():
    """Product and factorial forms coincide for every 2 <= k <= n <= 200."""
    for n in range(2, 201):
        for k in range(2, n + 1):
            assert dyadic_product(k, n) == dyadic_product_factorial(k, n), (n, k)


@pytest.mark.slow
def test_full_sweeps():
    assert bounds_sweep(200) is None
    assert chain_sweep(100_000) is None
