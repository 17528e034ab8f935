"""Tree entropy from return probabilities: estimates and certified intervals.

For the hypercubic lattice

    h_d = log(2d) - sum_{k>=1} p_d(2k) / (2k)

and for the body-centred lattice

    h_d^bcc = d log 2 - sum_{k>=1} p_1(2k)^d / (2k).

Partial sums are exact rationals; only the logarithm, the tail bound and the
final subtraction are done in (outward-rounded) floating point.  Every term is
positive, so each partial sum alone gives an upper bound.  Lower bounds add a
bound on the discarded tail using

    p_d(2k) <= 2 (d / (4 pi k))^(d/2),

which is a theorem for d <= 6 and an unproven (and, at small k and d >= 16,
false) statement in higher dimensions.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import iv, mp

from .intervals import CertifiedInterval, Rigor, enclose, lower, upper, working_precision
from .walkcounts import CountCache, ReturnCountTable, build_counts, default_terms
from .zeta import (
    hurwitz_zeta_estimate,
    hurwitz_zeta_interval_lower,
    hurwitz_zeta_interval_upper,
)

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 256


class Family(str, enum.Enum):
    HYPERCUBIC = "hypercubic"
    BCC = "bcc"


class TailMethod(str, enum.Enum):
    ZETA_INTEGRAL = "zeta_integral"
    EULER_MACLAURIN = "euler_maclaurin"


@dataclass(frozen=True)
class LatticeSpec:
    family: Family
    dimension: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        minimum = 2 if self.family is Family.BCC else 1
        if self.dimension < minimum:
            raise ValueError(f"{self.family.value} lattice needs d >= {minimum}, got {self.dimension}")


@dataclass(frozen=True)
class EntropyResult:
    lattice: LatticeSpec
    estimate: mpmath.mpf
    certified: CertifiedInterval
    terms_used: int
    precision_bits: int
    tail_method: TailMethod
    bound_violations: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.certified.lo <= self.estimate <= self.certified.hi:
            raise ValueError("estimate outside its certified interval")

    def to_record(self) -> dict[str, Any]:
        """Flat record; decimal strings parse back to the same binary values."""
        bits = self.precision_bits
        return {
            "family": self.lattice.family.value,
            "d": self.lattice.dimension,
            "K": self.terms_used,
            "precision_bits": bits,
            "estimate": roundtrip_decimal(self.estimate, bits),
            "lo": roundtrip_decimal(self.certified.lo, bits),
            "hi": roundtrip_decimal(self.certified.hi, bits),
            "rigor": self.certified.rigor.value,
            "tail_method": self.tail_method.value,
            "condition_note": self.certified.condition_note,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "EntropyResult":
        bits = int(rec["precision_bits"])
        with working_precision(bits):
            est, lo, hi = (mp.mpf(rec[key]) for key in ("estimate", "lo", "hi"))
        return cls(
            lattice=LatticeSpec(Family(rec["family"]), int(rec["d"])),
            estimate=est,
            certified=CertifiedInterval(lo, hi, Rigor(rec["rigor"]), rec.get("condition_note", "")),
            terms_used=int(rec["K"]),
            precision_bits=bits,
            tail_method=TailMethod(rec["tail_method"]),
        )


def roundtrip_decimal(x: mpmath.mpf, bits: int) -> str:
    """Shortest decimal string that reads back as ``x`` at ``bits`` precision."""
    with working_precision(bits):
        limit = int(bits * math.log10(2)) + 3
        for n in range(17, limit + 1):
            s = mpmath.nstr(x, n, strip_zeros=True, min_fixed=-10**6, max_fixed=10**6)
            if mp.mpf(s) == x:
                return s
    raise ArithmeticError(f"no round-trip decimal for {x!r}")  # pragma: no cover


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"not a finite value: {x}")
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def certified_digits(interval: CertifiedInterval, max_places: int = 60) -> str:
    """Decimal digits shared by both endpoints (truncation, not rounding).

    Returns ``""`` when even the integer parts differ.
    """
    lo, hi = mpf_to_fraction(interval.lo), mpf_to_fraction(interval.hi)
    best = ""
    for places in range(max_places + 1):
        scale = 10**places
        a, b = math.floor(lo * scale), math.floor(hi * scale)
        if a != b:
            break
        best = truncated_decimal(lo, places)
    return best


def truncated_decimal(x: Fraction | mpmath.mpf, places: int) -> str:
    """``x`` truncated toward minus infinity to ``places`` decimals."""
    if not isinstance(x, Fraction):
        x = mpf_to_fraction(x)
    n = math.floor(x * 10**places)
    sign, n = ("-", -n) if n < 0 else ("", n)
    if places == 0:
        return f"{sign}{n}"
    digits = str(n).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


# -- exact partial sums --------------------------------------------------------


def _require(table: ReturnCountTable, d: int, K: int) -> None:
    if table.dimension != d:
        raise ValueError(f"table is for d={table.dimension}, not d={d}")
    if table.kmax < K:
        raise IndexError(f"table reaches k={table.kmax}, need k={K}")


def _even_lcm(K: int) -> int:
    return 2 * math.lcm(*range(1, K + 1))


def partial_sum(d: int, K: int, table: ReturnCountTable) -> Fraction:
    """``sum_{k=1}^{K} p_d(2k) / (2k)`` as an exact rational."""
    _require(table, d, K)
    q = (2 * d) ** 2
    L = _even_lcm(K)
    num = 0
    for k in range(1, K + 1):
        num = num * q + table[k] * (L // (2 * k))
    return Fraction(num, L * q**K)


def bcc_partial_sum(d: int, K: int, table1: ReturnCountTable) -> Fraction:
    """``sum_{k=1}^{K} p_1(2k)^d / (2k)`` exactly, from the 1-D count table."""
    _require(table1, 1, K)
    q = 4**d
    L = _even_lcm(K)
    num = 0
    for k in range(1, K + 1):
        num = num * q + table1[k] ** d * (L // (2 * k))
    return Fraction(num, L * q**K)


# -- rigorous pieces -----------------------------------------------------------


def _half(d: int):
    return iv.mpf(d) / 2


def _decay_coefficient(d: int):
    """Interval for ``(d / (4 pi))^(d/2)``."""
    return (iv.mpf(d) / (4 * iv.pi)) ** _half(d)


def _bcc_coefficient(d: int):
    """Interval for ``2^(d-1) (4 pi)^(-d/2)``."""
    return iv.mpf(2) ** (d - 1) * (4 * iv.pi) ** (-_half(d))


def _rigor_for(d: int, violations: tuple[int, ...], K: int) -> tuple[Rigor, str]:
    if d <= 6:
        return Rigor.PROVEN, ""
    note = (
        f"tail bound p_d(2k) <= 2(d/(4 pi k))^(d/2) is unproven in d >= 7; "
        f"checked exactly for k <= {K}, assumed for k > {K}"
    )
    if violations:
        note += f"; violated at k in {list(violations)}"
    return Rigor.CONDITIONAL, note


def return_bound_violations(d: int, table: ReturnCountTable, kmax: int | None = None,
                            precision_bits: int = 128) -> tuple[int, ...]:
    """All ``1 <= k <= kmax`` at which ``p_d(2k) <= 2 (d/(4 pi k))^(d/2)`` is not certified.

    Each comparison is between an enclosure of the exact probability and an
    enclosure of the bound; overlap counts as a violation.
    """
    kmax = table.kmax if kmax is None else kmax
    _require(table, d, kmax)
    bad = []
    q = (2 * d) ** 2
    with working_precision(precision_bits):
        coef = 2 * _decay_coefficient(d)
        for k in range(1, kmax + 1):
            p = enclose(Fraction(table[k], q**k))
            bound = coef * iv.mpf(k) ** (-_half(d))
            if not upper(p) <= lower(bound):
                bad.append(k)
    return tuple(bad)


def upper_bound_h(d: int, K: int, precision_bits: int = DEFAULT_PRECISION,
                  table: ReturnCountTable | None = None) -> mpmath.mpf:
    """``log(2d)`` minus the first ``K`` series terms, rounded up; always >= h_d."""
    table = table or build_counts(d, K)
    S = partial_sum(d, K, table)
    with working_precision(precision_bits):
        return upper(iv.log(iv.mpf(2 * d)) - enclose(S))


def tail_upper(d: int, K: int, precision_bits: int = DEFAULT_PRECISION,
               zeta_method: str = "midpoint") -> tuple[mpmath.mpf, Rigor]:
    """Upper bound on ``sum_{k>K} p_d(2k)/(2k)`` and whether it is proven.

    Termwise ``p_d(2k)/(2k) <= (d/(4 pi))^(d/2) k^(-d/2-1)``; the sum of the
    right side over ``k > K`` is a Hurwitz zeta value at ``K + 1``.
    """
    if d < 1 or K < 0:
        raise ValueError("need d >= 1 and K >= 0")
    if d <= 2:
        log.warning("tail bound for d=%d converges slowly (terms ~ k^-%s)", d, Fraction(d, 2) + 1)
    with working_precision(precision_bits):
        s = Fraction(d, 2) + 1
        bound = _decay_coefficient(d) * hurwitz_zeta_interval_upper(s, K + 1, zeta_method)
        value = upper(bound)
    return value, (Rigor.PROVEN if d <= 6 else Rigor.CONDITIONAL)


def estimate_tail(d: int, K: int, precision_bits: int = DEFAULT_PRECISION, order: int = 4,
                  method: TailMethod = TailMethod.EULER_MACLAURIN) -> mpmath.mpf:
    """Non-rigorous tail from ``p_d(2k) ~ 2 (d/(4 pi k))^(d/2) (1 - d/(8k))``."""
    s = Fraction(d, 2) + 1
    with working_precision(precision_bits):
        coef = (mp.mpf(d) / (4 * mp.pi)) ** (mp.mpf(d) / 2)
        z1, z2 = _zeta_pair(s, K + 1, precision_bits, order, method)
        return coef * (z1 - mp.mpf(d) / 8 * z2)


def _zeta_pair(s: Fraction, a: int, bits: int, order: int, method: TailMethod):
    if method is TailMethod.EULER_MACLAURIN:
        return (hurwitz_zeta_estimate(s, a, order, bits), hurwitz_zeta_estimate(s + 1, a, order, bits))
    # midpoint-rule integrals, the same comparison used by the rigorous bound
    A = mp.mpf(a) - mp.mpf(1) / 2
    S = mp.mpf(s.numerator) / s.denominator
    return A ** (1 - S) / (S - 1), A ** (-S) / S


# -- driver --------------------------------------------------------------------


def compute_entropy(
    spec: LatticeSpec,
    K: int | None = None,
    precision_bits: int = DEFAULT_PRECISION,
    cache: CountCache | None = None,
    order: int = 4,
    tail_method: TailMethod = TailMethod.EULER_MACLAURIN,
    zeta_method: str = "midpoint",
) -> EntropyResult:
    """Estimate plus certified interval for the tree entropy of ``spec``.

    ``zeta_method`` selects the rigorous Hurwitz zeta upper bound used to close
    the tail (see :mod:`treeentropy.zeta`); ``tail_method`` and ``order`` only
    affect the estimate.
    """
    d = spec.dimension
    K = default_terms(d) if K is None else K
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    tail_method = TailMethod(tail_method)
    if spec.family is Family.HYPERCUBIC:
        return _hypercubic(d, K, precision_bits, cache, order, tail_method, zeta_method)
    return _bcc(d, K, precision_bits, cache, order, tail_method, zeta_method)


def _hypercubic(d, K, bits, cache, order, tail_method, zeta_method) -> EntropyResult:
    table = build_counts(d, K, cache)
    S = partial_sum(d, K, table)
    violations = return_bound_violations(d, table, K) if d >= 7 else ()
    rigor, note = _rigor_for(d, violations, K)
    tail_hi, _ = tail_upper(d, K, bits, zeta_method)
    with working_precision(bits):
        top = iv.log(iv.mpf(2 * d)) - enclose(S)
        lo = lower(top - iv.mpf(tail_hi))
        hi = upper(top)
        est = mp.log(2 * d) - mp.mpf(S.numerator) / S.denominator
        est -= estimate_tail(d, K, bits, order, tail_method)
    return EntropyResult(
        lattice=LatticeSpec(Family.HYPERCUBIC, d),
        estimate=est,
        certified=CertifiedInterval(lo, hi, rigor, note),
        terms_used=K,
        precision_bits=bits,
        tail_method=tail_method,
        bound_violations=violations,
    )


def _bcc(d, K, bits, cache, order, tail_method, zeta_method) -> EntropyResult:
    table1 = build_counts(1, K, cache)
    S = bcc_partial_sum(d, K, table1)
    s = Fraction(d, 2) + 1
    with working_precision(bits):
        base = iv.mpf(d) * iv.log(iv.mpf(2)) - enclose(S)
        coef = _bcc_coefficient(d)
        # p_1(2k)^d <= 2^d (4 pi k)^(-d/2) bounds the tail above
        tail_hi = coef * hurwitz_zeta_interval_upper(s, K + 1, zeta_method)
        # p_1(2k)^d >= 2^d (4 pi k)^(-d/2) (1 - d/(8k)) bounds it below
        tail_lo = coef * (hurwitz_zeta_interval_lower(s, K + 1)
                          - iv.mpf(d) / 8 * hurwitz_zeta_interval_upper(s + 1, K + 1, zeta_method))
        lo = lower(base - tail_hi)
        hi = upper(base - iv.mpf(max(lower(tail_lo), mp.zero)))
        est = d * mp.log(2) - mp.mpf(S.numerator) / S.denominator
        z1, z2 = _zeta_pair(s, K + 1, bits, order, tail_method)
        c = mp.mpf(2) ** (d - 1) * (4 * mp.pi) ** (-mp.mpf(d) / 2)
        est -= c * (z1 - mp.mpf(d) / 8 * z2)
    return EntropyResult(
        lattice=LatticeSpec(Family.BCC, d),
        estimate=est,
        certified=CertifiedInterval(lo, hi),
        terms_used=K,
        precision_bits=bits,
        tail_method=tail_method,
    )
