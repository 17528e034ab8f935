"""Exact return counts of simple random walk on Z^d.

``f(d, k)`` is the number of closed nearest-neighbour walks of length ``2k``
in Z^d.  Counts for a sum of dimensions follow from the binomial convolution

    f(d1 + d2, k) = sum_r C(2k, 2r) f(d1, r) f(d2, k - r)

so a table for dimension ``d`` is assembled from tables for ``floor(d/2)`` and
``ceil(d/2)``.  All arithmetic is on integers; division by ``(2d)^(2k)``
happens only when a probability is requested.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TextIO

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _bigint = int


@dataclass(frozen=True)
class ReturnCountTable:
    """Closed-walk counts ``counts[k] = f(dimension, k)`` for ``k = 0..kmax``."""

    dimension: int
    counts: tuple[int, ...]

    @property
    def kmax(self) -> int:
        return len(self.counts) - 1

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    def truncated(self, kmax: int) -> "ReturnCountTable":
        if kmax > self.kmax:
            raise IndexError(f"table for d={self.dimension} only reaches k={self.kmax}")
        return ReturnCountTable(self.dimension, self.counts[: kmax + 1])

    def dump(self, fh: TextIO) -> None:
        """Write ``k<TAB>f(d,k)`` lines, exact decimal."""
        for k, c in enumerate(self.counts):
            fh.write(f"{k}\t{c}\n")

    @classmethod
    def load(cls, dimension: int, lines: Iterable[str]) -> "ReturnCountTable":
        counts = []
        for line in lines:
            line = line.strip()
            if not line:
                continue
            k, c = line.split("\t")
            if int(k) != len(counts):
                raise ValueError(f"expected k={len(counts)}, got k={k}")
            counts.append(int(c))
        return cls(dimension, tuple(counts))


def p1_return(k: int) -> Fraction:
    """Return probability ``p_1(2k) = C(2k, k) / 4^k`` of the 1-D walk."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction(math.comb(2 * k, k), 4**k)


def _even_binomial_row(k: int) -> list:
    """``[C(2k, 0), C(2k, 2), ..., C(2k, 2k)]`` by the multiplicative rule."""
    n = 2 * k
    row = [_bigint(1)]
    c = _bigint(1)
    for r in range(k):
        c = c * (n - 2 * r) * (n - 2 * r - 1) // ((2 * r + 1) * (2 * r + 2))
        row.append(c)
    return row


def convolve_counts(a: Sequence, b: Sequence, kmax: int) -> list:
    """Counts for the sum of two dimensions from their two count sequences."""
    out = [_bigint(1)]
    for k in range(1, kmax + 1):
        row = _even_binomial_row(k)
        s = _bigint(0)
        for r in range(k + 1):
            s += row[r] * a[r] * b[k - r]
        out.append(s)
    return out


def _base_counts(d: int, kmax: int) -> list:
    central = [_bigint(math.comb(2 * k, k)) for k in range(kmax + 1)]
    if d == 1:
        return central
    # p_2(2k) = p_1(2k)^2, so f(2, k) = C(2k, k)^2
    return [c * c for c in central]


class CountCache:
    """Memo of count tables keyed by dimension.

    A request for dimension ``d`` touches O(log d) distinct dimensions.  A
    cached table that is long enough is sliced rather than recomputed.
    """

    def __init__(self) -> None:
        self._raw: dict[int, list] = {}

    def raw(self, d: int, kmax: int, split: Callable[[int], int] | None = None) -> list:
        cached = self._raw.get(d)
        if cached is not None and len(cached) > kmax:
            return cached[: kmax + 1]
        if d <= 2:
            counts = _base_counts(d, kmax)
        else:
            d1 = split(d) if split is not None else d // 2
            counts = convolve_counts(self.raw(d1, kmax, split), self.raw(d - d1, kmax, split), kmax)
        if split is None:
            self._raw[d] = counts
        return counts

    def table(self, d: int, kmax: int) -> ReturnCountTable:
        return ReturnCountTable(d, tuple(int(c) for c in self.raw(d, kmax)))

    def clear(self) -> None:
        self._raw.clear()


_default_cache = CountCache()


def build_counts(
    d: int,
    kmax: int,
    cache: CountCache | None = None,
    split: Callable[[int], int] | None = None,
) -> ReturnCountTable:
    """Exact table of ``f(d, k)`` for ``k = 0..kmax``.

    ``split(d)`` picks the first summand of the dimension split; the default is
    ``d // 2``.  Custom splits bypass the cache (they exist for cross-checks).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if kmax < 1:
        raise ValueError(f"kmax must be >= 1, got {kmax}")
    if split is not None:
        return ReturnCountTable(d, tuple(int(c) for c in CountCache().raw(d, kmax, split)))
    return (cache or _default_cache).table(d, kmax)


def p_return(d: int, k: int, table: ReturnCountTable) -> Fraction:
    """Return probability ``p_d(2k) = f(d, k) / (2d)^(2k)``."""
    if table.dimension != d:
        raise ValueError(f"table is for d={table.dimension}, not d={d}")
    if not 0 <= k <= table.kmax:
        raise IndexError(f"k={k} outside table range 0..{table.kmax}")
    return Fraction(table[k], (2 * d) ** (2 * k))


def default_terms(d: int) -> int:
    """Series terms used by default: 1000 for d <= 6, 100 up to d = 10, else 80."""
    if d <= 6:
        return 1000
    if d <= 10:
        return 100
    return 80
