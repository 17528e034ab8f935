"""Directed-rounding helpers and the certified interval record.

Rigorous endpoints are computed in mpmath's interval context, whose
elementary operations round outward.  The interval context is global state,
so :func:`working_precision` is not safe to use from several threads at once.
"""
from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import mpmath
from mpmath import iv, mp

Exact = Union[int, Fraction]


class Rigor(str, enum.Enum):
    PROVEN = "proven"
    CONDITIONAL = "conditional"


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Set both the interval and the floating context to ``bits`` bits."""
    old_iv, old_mp = iv.prec, mp.prec
    iv.prec = bits
    mp.prec = bits
    try:
        yield
    finally:
        iv.prec = old_iv
        mp.prec = old_mp


def enclose(x: Exact | float) -> "mpmath.ctx_iv.ivmpf":
    """Tight interval around an exact rational (or a binary float)."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def lower(x) -> mpmath.mpf:
    """Lower endpoint of an interval as an ordinary mpf (no rounding)."""
    return mp.make_mpf(x._mpi_[0])


def upper(x) -> mpmath.mpf:
    return mp.make_mpf(x._mpi_[1])


@dataclass(frozen=True)
class CertifiedInterval:
    """``lo <= true value <= hi`` under the hypotheses named by ``rigor``."""

    lo: mpmath.mpf
    hi: mpmath.mpf
    rigor: Rigor = Rigor.PROVEN
    condition_note: str = ""

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if self.rigor is Rigor.PROVEN and self.condition_note:
            raise ValueError("a proven interval carries no condition note")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> mpmath.mpf:
        return self.hi - self.lo

    def contains_interval(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi
