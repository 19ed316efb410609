"""
Unit tests for the broad-to-linear optimizer and the state-of-the-art table.
"""
from fractions import Fraction

import pytest

from app.core.exceptions import DomainError
from app.linear import service
from app.linear.registry import ASYMPTOTIC_REGISTRY, PRIOR_REGISTRY, PUBLISHED_EXPONENTS
from app.linear.service import (
    candidate_sweep,
    k_equals_n_wins,
    linear_exponent,
    p_limit,
    p_upper_bg,
    state_of_art_table,
)


@pytest.mark.parametrize("n, expected", sorted(PUBLISHED_EXPONENTS.items()))
def test_published_exponents_reproduced_exactly(n, expected):
    """Every highlighted dimension reproduces its published fraction."""
    assert linear_exponent(n).p == expected


def test_published_registry_is_complete():
    assert sorted(PUBLISHED_EXPONENTS) == [5, 7, 9, 11, 13, 14, 15, 16, 17, 18, 19]


@pytest.mark.parametrize("n, display", [
    (5, "2 + 63/100"),
    (19, "2 + 1/7"),
    (11, "2 + 12597/49670"),
])
def test_linear_display_form(n, display):
    assert linear_exponent(n).display == display


def test_dimension_five_uses_k_three():
    result = linear_exponent(5)
    assert result.k_opt == 3
    assert result.p_broad_at_k == 2 + Fraction(63, 100)
    assert result.p_limit_at_k == 2 + Fraction(4, 7)
    assert result.upper_ok
    assert not result.tie


def test_dimension_nine_uses_k_five():
    assert linear_exponent(9).k_opt == 5


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12, 19, 27])
def test_fast_optimizer_matches_reference_loop(n):
    """The bisection optimum equals the minimum over the explicit candidate sweep."""
    rows = candidate_sweep(n)
    best = min(row.p_max for row in rows)
    first_k = next(row.k for row in rows if row.p_max == best)
    result = linear_exponent(n)
    assert result.p == best
    assert result.k_opt == first_k


def test_candidate_sweep_covers_every_k():
    rows = candidate_sweep(6)
    assert [row.k for row in rows] == [2, 3, 4, 5, 6]
    assert all(row.p_max == max(row.p_broad, row.p_limit) for row in rows)


def test_limit_and_upper_constraints():
    assert p_limit(5, 3) == 2 + Fraction(4, 7)
    assert p_upper_bg(5, 3) == 4
    assert p_upper_bg(5, 4) == 3
    assert p_upper_bg(5, 2) is None


@pytest.mark.parametrize("n", [0, 1, 2])
def test_linear_rejects_small_dimensions(n):
    with pytest.raises(DomainError):
        linear_exponent(n)


def test_table_winners_against_prior_rows():
    """Prior methods win at n = 3 and n = 6; the new exponents win at 15 and 17."""
    rows = {row.n: row for row in state_of_art_table(3, 19)}
    assert rows[3].winner == "prior"
    assert rows[6].winner == "prior"
    assert rows[6].prior_p == 2 + Fraction(1, 2)
    assert rows[6].new_p >= 2 + Fraction(1, 2)
    assert rows[15].winner == "new" and rows[15].new_p == 2 + Fraction(2, 11)
    assert rows[17].winner == "new" and rows[17].new_p == 2 + Fraction(4, 25)
    assert all(row.published_match is not False for row in rows.values())


def test_table_csv_record_uses_integer_columns():
    row = state_of_art_table(5, 5)[0]
    record = row.csv_record()
    assert (record["new_num"], record["new_den"]) == (263, 100)
    assert record["prior_num"] is None
    assert record["winner"] == "new"


def test_table_rejects_bad_range():
    with pytest.raises(DomainError):
        state_of_art_table(10, 9)


def test_prior_registry_rows():
    assert PRIOR_REGISTRY.dimensions() == [2, 3, 4, 6, 8, 10, 12]
    assert PRIOR_REGISTRY.get(4).exponent == 2 + Fraction(1407, 1759)
    assert PRIOR_REGISTRY.get(5) is None


def test_asymptotic_registry_rational_entries():
    values = {entry.label: entry.value for entry in ASYMPTOTIC_REGISTRY}
    assert values["Tomas"] == 4
    assert values["Guth"] == Fraction(8, 3)
    assert values["Hickman-Rogers"] is None


def test_k_equals_n_never_optimal_up_to_one_hundred():
    """The boundary choice k = n never beats 2 <= k <= n-1."""
    assert k_equals_n_wins(100) == []


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_prior_rows_are_not_beaten(n):
    row = state_of_art_table(n, n)[0]
    assert row.new_p >= PRIOR_REGISTRY.get(n).exponent
    assert row.winner == "prior"
    assert row.attribution == "Guth"


def test_upper_constraint_holds_up_to_one_hundred():
    failures = [n for n in range(3, 101) if not linear_exponent(n).upper_ok]
    assert failures == []


@pytest.mark.slow
def test_optimizer_sound_up_to_one_hundred():
    for n in range(3, 101):
        rows = candidate_sweep(n)
        best = min(row.p_max for row in rows)
        result = linear_exponent(n)
        assert result.p == best, n
        assert result.k_opt == next(row.k for row in rows if row.p_max == best), n


@pytest.mark.parametrize("n", range(3, 41))
def test_tie_flag_matches_reference_loop(n):
    rows = candidate_sweep(n)
    best = min(row.p_max for row in rows)
    assert linear_exponent(n).tie == (sum(row.p_max == best for row in rows) > 1)


def test_tie_goes_to_smaller_k(monkeypatch):
    """At n = 5 the broad exponent at k = 3 is forced onto the limit at k = 4."""
    original = service._broad_exponent_fast

    def touching(n, k):
        return p_limit(n, k + 1) if (n, k) == (5, 3) else original(n, k)

    monkeypatch.setattr(service, "_broad_exponent_fast", touching)
    result = linear_exponent(5)
    assert result.tie
    assert result.k_opt == 3
    assert result.p == 2 + Fraction(2, 3)
    assert result.p_broad_at_k == p_limit(5, 4)
