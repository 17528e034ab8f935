"""Large-d asymptotic expansion of the hypercubic tree entropy.

    h_d ~ log(2d) - sum_{j=1}^{14} c_j / d^j

The series is asymptotic, not convergent: from ``j = 9`` on the coefficients
are negative and grow fast, so truncation order matters and no remainder
bound is available.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .intervals import working_precision

COEFFICIENTS: tuple[Fraction, ...] = (
    Fraction(1, 4),
    Fraction(3, 16),
    Fraction(7, 32),
    Fraction(45, 128),
    Fraction(269, 384),
    Fraction(805, 512),
    Fraction(3615, 1024),
    Fraction(23205, 4096),
    Fraction(-144963, 10240),
    Fraction(-2187031, 8192),
    Fraction(-40225409, 16384),
    Fraction(-1277353077, 65536),
    Fraction(-66817216455, 458752),
    Fraction(-271891453119, 262144),
)
MAX_ORDER = len(COEFFICIENTS)


class UnsupportedOrder(ValueError):
    pass


@dataclass(frozen=True)
class TermRow:
    j: int
    term: mpmath.mpf  # c_j / d^j
    value: mpmath.mpf  # log(2d) minus terms 1..j


def _check(d: int, order: int) -> None:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if not 0 <= order <= MAX_ORDER:
        raise UnsupportedOrder(f"order must be in 0..{MAX_ORDER}, got {order}")


def correction(d: int, order: int) -> Fraction:
    """Exact ``sum_{j<=order} c_j / d^j``."""
    _check(d, order)
    return sum((c / Fraction(d) ** j for j, c in enumerate(COEFFICIENTS[:order], 1)), Fraction(0))


def h_asymptotic(d: int, order: int = MAX_ORDER, precision_bits: int = 128) -> mpmath.mpf:
    _check(d, order)
    corr = correction(d, order)
    with working_precision(precision_bits):
        return mp.log(2 * d) - mp.mpf(corr.numerator) / corr.denominator


def term_breakdown(d: int, order: int = MAX_ORDER, precision_bits: int = 128) -> list[TermRow]:
    """Per-term table ``(j, c_j/d^j, partial value)`` for ``j = 1..order``."""
    _check(d, order)
    rows = []
    with working_precision(precision_bits):
        value = mp.log(2 * d)
        for j, c in enumerate(COEFFICIENTS[:order], 1):
            t = Fraction(c) / Fraction(d) ** j
            term = mp.mpf(t.numerator) / t.denominator
            value -= term
            rows.append(TermRow(j, term, value))
    return rows


def best_truncation(d: int, precision_bits: int = 128) -> tuple[int, mpmath.mpf]:
    """Truncate at the smallest term (the usual rule for asymptotic series).

    The order returned is the index of the smallest ``|c_j / d^j|``; that term
    is included.  This is a heuristic, not an error bound.
    """
    if d < 3:
        raise ValueError("the expansion is meaningless below d = 3")
    sizes = [abs(c) / Fraction(d) ** j for j, c in enumerate(COEFFICIENTS, 1)]
    order = 1 + min(range(MAX_ORDER), key=sizes.__getitem__)
    return order, h_asymptotic(d, order, precision_bits)
