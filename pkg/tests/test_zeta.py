from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from treeentropy.zeta import hurwitz_zeta_estimate, hurwitz_zeta_lower, hurwitz_zeta_upper

METHODS = ["midpoint", "euler_maclaurin", "elementary"]


def reference(s, a):
    with mpmath.workdps(60):
        return mpmath.zeta(mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator, a)


def test_upper_at_two_one():
    value = hurwitz_zeta_upper(2, 1)
    assert mpmath.pi**2 / 6 <= value <= 2
    assert hurwitz_zeta_upper(2, 1, method="elementary") == 2


@pytest.mark.parametrize("method", METHODS)
def test_upper_example_large_a(method):
    assert 2.10e-5 <= hurwitz_zeta_upper(Fraction(5, 2), 1001, method=method) <= 2.12e-5


def test_upper_elementary_matches_direct_formula():
    with mpmath.workprec(256):
        direct = mpmath.mpf(1001) ** -2.5 + mpmath.mpf(1001) ** -1.5 / 1.5
    assert abs(hurwitz_zeta_upper(Fraction(5, 2), 1001, method="elementary") / direct - 1) < 1e-60


@pytest.mark.parametrize("method", METHODS)
def test_upper_at_three_two(method):
    assert hurwitz_zeta_upper(3, 2, method=method) >= reference(3, 1) - 1


@pytest.mark.parametrize("s", [1, Fraction(1, 2), 0])
def test_divergent(s):
    with pytest.raises(ValueError):
        hurwitz_zeta_upper(s, 1)
    with pytest.raises(ValueError):
        hurwitz_zeta_estimate(s, 1)


def test_rejects_small_a_and_bad_method():
    with pytest.raises(ValueError):
        hurwitz_zeta_upper(2, Fraction(1, 2))
    with pytest.raises(ValueError):
        hurwitz_zeta_upper(2, 1, method="simpson")


@settings(max_examples=60, deadline=None)
@given(
    s2=st.integers(3, 60),  # s = s2 / 2 > 1
    a=st.integers(1, 5000),
    method=st.sampled_from(METHODS),
)
def test_bounds_bracket_zeta(s2, a, method):
    s = Fraction(s2, 2)
    z = reference(s, a)
    assert hurwitz_zeta_lower(s, a) <= z <= hurwitz_zeta_upper(s, a, method=method)


@settings(max_examples=30, deadline=None)
@given(s2=st.integers(3, 24), a=st.integers(50, 3000))
def test_bound_ordering_for_tails(s2, a):
    # at small a the elementary bound can win; tails start far out
    s = Fraction(s2, 2)
    em = hurwitz_zeta_upper(s, a, method="euler_maclaurin")
    mid = hurwitz_zeta_upper(s, a, method="midpoint")
    assert em <= mid <= hurwitz_zeta_upper(s, a, method="elementary")


@pytest.mark.parametrize("s, exact", [(2, mpmath.pi**2 / 6), (4, mpmath.pi**4 / 90)])
def test_estimate_known_values(s, exact):
    assert abs(hurwitz_zeta_estimate(s, 1, 4) - exact) < 1e-10


def test_estimate_consistent_with_bounds():
    est = hurwitz_zeta_estimate(Fraction(5, 2), 1001, 2)
    lo, hi = hurwitz_zeta_lower(Fraction(5, 2), 1001), hurwitz_zeta_upper(Fraction(5, 2), 1001)
    assert lo <= est <= hi
    assert abs(est - reference(Fraction(5, 2), 1001)) < 1e-20


def test_estimate_error_falls_with_order():
    exact = reference(3, 1)
    errors = [abs(hurwitz_zeta_estimate(3, 1, order, shift=3) - exact) for order in range(0, 5)]
    assert all(a > b for a, b in zip(errors, errors[1:]))


def test_estimate_negative_order():
    with pytest.raises(ValueError):
        hurwitz_zeta_estimate(2, 1, -1)
