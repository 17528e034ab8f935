"""Hurwitz zeta ``zeta(s, a) = sum_{j>=0} (a + j)^(-s)``: rigorous bounds and estimates.

The bounds compare the sum with integrals of the convex decreasing function
``x^(-s)``:

* midpoint rule, ``(a + j)^(-s) <= int_{a+j-1/2}^{a+j+1/2} x^(-s) dx``, gives
  ``zeta(s, a) <= (a - 1/2)^(1-s) / (s-1)``;
* the cruder ``a^(-s) + a^(1-s)/(s-1)`` is available as ``method="elementary"``;
* the trapezoid rule gives ``zeta(s, a) >= a^(1-s)/(s-1) + a^(-s)/2``.

``method="euler_maclaurin"`` adds the first Bernoulli correction to the
trapezoid value, ``+ s a^(-s-1) / 12``.  Every even derivative of ``x^(-s)`` is
positive on ``x > 0``, so the Euler-Maclaurin remainder has the sign of the
first omitted term (negative here) and the truncated sum is an upper bound.

Estimates use Euler-Maclaurin summation and are not one-sided.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import iv, mp

from .intervals import enclose, lower, upper, working_precision

Real = int | Fraction | float


def _check(s: Real, a: Real) -> tuple[Fraction, Fraction]:
    s, a = Fraction(s), Fraction(a)
    if s <= 1:
        raise ValueError(f"zeta(s, a) diverges for s <= 1 (s={s})")
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    return s, a


def hurwitz_zeta_interval_upper(s: Real, a: Real, method: str = "midpoint"):
    """Interval (in the current interval precision) whose top bounds zeta(s, a)."""
    s, a = _check(s, a)
    S, A = enclose(s), enclose(a)
    if method == "midpoint":
        return (A - iv.mpf(1) / 2) ** (1 - S) / (S - 1)
    if method == "elementary":
        return A ** (-S) + A ** (1 - S) / (S - 1)
    if method == "euler_maclaurin":
        return A ** (1 - S) / (S - 1) + A ** (-S) / 2 + S * A ** (-S - 1) / 12
    raise ValueError(f"unknown method {method!r}")


def hurwitz_zeta_interval_lower(s: Real, a: Real):
    s, a = _check(s, a)
    S, A = enclose(s), enclose(a)
    return A ** (1 - S) / (S - 1) + A ** (-S) / 2


def hurwitz_zeta_upper(
    s: Real, a: Real, precision_bits: int = 256, method: str = "midpoint"
) -> mpmath.mpf:
    """Certified upper bound on zeta(s, a), rounded upward."""
    with working_precision(precision_bits):
        return upper(hurwitz_zeta_interval_upper(s, a, method))


def hurwitz_zeta_lower(s: Real, a: Real, precision_bits: int = 256) -> mpmath.mpf:
    """Certified lower bound on zeta(s, a), rounded downward."""
    with working_precision(precision_bits):
        return lower(hurwitz_zeta_interval_lower(s, a))


def hurwitz_zeta_estimate(
    s: Real, a: Real, order: int = 4, precision_bits: int = 256, shift: int | None = None
) -> mpmath.mpf:
    """Euler-Maclaurin approximation of zeta(s, a).

    Sums ``shift`` terms directly (by default enough to move the base to 10),
    then adds the integral, the boundary term and ``order`` Bernoulli
    corrections at ``N = a + shift``.  The neglected remainder is of size
    ``|B_{2m+2}| (s)_{2m+1} / (2m+2)! * N^(-s-2m-1)`` with ``m = order``.
    """
    s, a = _check(s, a)
    if order < 0:
        raise ValueError("order must be >= 0")
    with working_precision(precision_bits):
        S = mp.mpf(s.numerator) / s.denominator
        A = mp.mpf(a.numerator) / a.denominator
        if shift is None:
            shift = max(0, int(mp.ceil(10 - A)))
        total = mp.fsum((A + j) ** (-S) for j in range(shift))
        N = A + shift
        total += N ** (1 - S) / (S - 1) + N ** (-S) / 2
        rising = S  # (s)_(2i-1)
        npow = N ** (-S - 1)
        for i in range(1, order + 1):
            total += mp.bernoulli(2 * i) / mp.factorial(2 * i) * rising * npow
            rising *= (S + 2 * i - 1) * (S + 2 * i)
            npow /= N * N
        return +total
