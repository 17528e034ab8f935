from fractions import Fraction

import mpmath
import pytest

from oracles import expansion_coefficients
from reference_values import TABLE_H
from treeentropy.asymptotic import (
    COEFFICIENTS,
    MAX_ORDER,
    UnsupportedOrder,
    best_truncation,
    correction,
    h_asymptotic,
    term_breakdown,
)


def test_coefficients_match_walk_count_expansion():
    assert MAX_ORDER == 14
    assert COEFFICIENTS == tuple(expansion_coefficients(MAX_ORDER))


def test_signs_flip_once_at_ninth_term():
    signs = [c > 0 for c in COEFFICIENTS]
    assert signs == [True] * 8 + [False] * 6


def test_order_zero_is_log():
    with mpmath.workprec(128):
        assert h_asymptotic(7, 0) == mpmath.log(14)
    assert correction(7, 0) == 0


def test_two_terms_at_d20():
    v = h_asymptotic(20, 2)
    with mpmath.workprec(128):
        expected = mpmath.log(40) - mpmath.mpf(1) / 80 - mpmath.mpf(3) / 6400
        assert abs(v - expected) < 1e-30
    assert abs(v - mpmath.mpf(TABLE_H[20])) < 5e-5


def test_six_terms_at_d5():
    v = h_asymptotic(5, 6)
    assert abs(v - mpmath.mpf("2.2424478013")) < 1e-9
    assert abs(v - mpmath.mpf(TABLE_H[5])) < 1e-4


def test_correction_is_exact_sum():
    assert correction(2, 2) == Fraction(1, 8) + Fraction(3, 64)


@pytest.mark.parametrize("order", [-1, 15])
def test_unsupported_order(order):
    with pytest.raises(UnsupportedOrder):
        h_asymptotic(5, order)


def test_bad_dimension():
    with pytest.raises(ValueError):
        h_asymptotic(0)
    with pytest.raises(ValueError):
        best_truncation(2)


def test_term_breakdown_accumulates():
    rows = term_breakdown(6, 5)
    assert [r.j for r in rows] == [1, 2, 3, 4, 5]
    with mpmath.workprec(128):
        assert abs(rows[-1].value - h_asymptotic(6, 5)) < 1e-30
        assert abs(rows[0].term - mpmath.mpf(1) / 24) < 1e-30


def test_best_truncation_examples():
    assert best_truncation(3)[0] <= 9
    order20, _ = best_truncation(20)
    sizes = [abs(c) / Fraction(20) ** j for j, c in enumerate(COEFFICIENTS, 1)]
    assert sizes[order20 - 1] == min(sizes)
    _, v5 = best_truncation(5)
    assert abs(v5 - mpmath.mpf(TABLE_H[5])) < 1e-3


@pytest.mark.parametrize("d", range(5, 21))
def test_best_truncation_beats_two_terms(d):
    ref = mpmath.mpf(TABLE_H[d])
    _, best = best_truncation(d)
    assert abs(best - ref) < abs(h_asymptotic(d, 2) - ref)
