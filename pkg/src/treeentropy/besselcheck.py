"""Non-rigorous cross-check of h_d through a one-dimensional integral.

    h_d = log(2d) + int_0^inf e^-t / t * (1 - I_0(t/d)^d) dt

The integral is split at a cutoff ``T``.  ``[0, T]`` is integrated by
adaptive Gauss-Legendre panels in float64 (see :mod:`treeentropy.kernels`);
beyond ``T``, ``I_0`` is replaced by its asymptotic series and the tail is
integrated term by term in closed form.  Nothing here is a certified bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mp

from . import kernels
from .intervals import working_precision


class AccuracyNotReached(ArithmeticError):
    """Raised when the requested tolerance was not met; carries the best value."""

    def __init__(self, message: str, estimate: float, error_estimate: float) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureConfig:
    cutoff: float | None = None  # None means 50 * d
    rel_tol: float = 1e-11
    tail_order: int = 8
    nodes: int = 20
    max_depth: int = 30

    def __post_init__(self) -> None:
        if self.cutoff is not None and self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.tail_order < 1:
            raise ValueError("tail_order must be >= 1")

    def cutoff_for(self, d: int) -> float:
        return 50.0 * d if self.cutoff is None else float(self.cutoff)


# -- I_0 at high precision -------------------------------------------------------


def _i0_series(x: mpmath.mpf) -> mpmath.mpf:
    q = (x / 2) ** 2
    term = total = mp.one
    m = 0
    eps = mp.eps
    while term > eps * total:
        m += 1
        term = term * q / (m * m)
        total += term
    return total


def _i0_asymptotic(x: mpmath.mpf) -> mpmath.mpf:
    # Sum up to the smallest term and count that term with weight 1/2.
    terms = []
    t = mp.one
    k = 0
    while True:
        terms.append(t)
        k += 1
        nxt = t * (2 * k - 1) ** 2 / (8 * k * x)
        if nxt >= t:
            break
        t = nxt
    s = mp.fsum(terms[:-1]) + terms[-1] / 2
    return mp.exp(x) / mp.sqrt(2 * mp.pi * x) * s


def i0_crossover(precision_bits: int) -> float:
    """Argument above which the asymptotic branch reaches ``precision_bits``.

    The optimally truncated asymptotic series is accurate to about
    ``e^(-2x)``.
    """
    return max(10.0, 0.5 * precision_bits * math.log(2) + 5)


def i0(x, precision_bits: int = 128, branch: str = "auto") -> mpmath.mpf:
    """Modified Bessel function ``I_0(x)`` for ``x >= 0``."""
    with working_precision(precision_bits + 16):
        x = mp.mpf(x)
        if x < 0:
            raise ValueError("i0 is only provided for x >= 0")
        if branch == "auto":
            branch = "series" if x < i0_crossover(precision_bits) else "asymptotic"
        if branch == "series":
            value = _i0_series(x)
        elif branch == "asymptotic":
            if x == 0:
                raise ValueError("asymptotic branch needs x > 0")
            value = _i0_asymptotic(x)
        else:
            raise ValueError(f"unknown branch {branch!r}")
    with working_precision(precision_bits):
        return +value


# -- quadrature ------------------------------------------------------------------


@lru_cache(maxsize=8)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _panel_sums(bounds: np.ndarray, d: int, n: int, backend: str | None) -> np.ndarray:
    """Gauss-Legendre estimate on each panel ``[bounds[i], bounds[i+1]]``."""
    x, w = _gauss(n)
    a, b = bounds[:-1, None], bounds[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + b) / 2 + half * x[None, :]
    vals = kernels.bessel_integrand(nodes.ravel(), d, backend).reshape(nodes.shape)
    return (vals * w[None, :]).sum(axis=1) * half[:, 0]


def integrate_head(d: int, cutoff: float, rel_tol: float, nodes: int = 20, max_depth: int = 30,
                   backend: str | None = None) -> tuple[float, float]:
    """Adaptive integral of the integrand over ``[0, cutoff]``; returns (value, error estimate).

    Panels are bisected breadth-first until each panel's one-level refinement
    changes it by less than its share of ``rel_tol``.  Summation order is fixed,
    so results are reproducible.
    """
    edges = [0.0]
    edge = 0.5
    while edge < cutoff:
        edges.append(edge)
        edge *= 2
    edges.append(cutoff)
    pending = np.array(edges)
    pending = np.stack([pending[:-1], pending[1:]], axis=1)
    accepted: list[tuple[float, float, float]] = []  # (left, value, error)
    scale = None
    for _ in range(max_depth):
        if len(pending) == 0:
            break
        left, right = pending[:, 0], pending[:, 1]
        mid = (left + right) / 2
        coarse = _panel_sums(np.column_stack([left, right]).ravel(), d, nodes, backend)[::2]
        fine_bounds = np.column_stack([left, mid, right])
        fine_l = _panel_sums(fine_bounds[:, :2].ravel(), d, nodes, backend)[::2]
        fine_r = _panel_sums(fine_bounds[:, 1:].ravel(), d, nodes, backend)[::2]
        fine = fine_l + fine_r
        err = np.abs(fine - coarse)
        if scale is None:
            scale = max(abs(fine.sum()), 1e-300)
        share = rel_tol * scale * (right - left) / cutoff
        ok = err <= np.maximum(share, 1e-17 * np.abs(fine))
        accepted.extend(zip(left[ok], fine[ok], err[ok]))
        bad = ~ok
        pending = np.concatenate([
            np.column_stack([left[bad], mid[bad]]),
            np.column_stack([mid[bad], right[bad]]),
        ]) if bad.any() else np.empty((0, 2))
    if len(pending):
        accepted.extend((l, float(v), float("inf")) for l, v in
                        zip(pending[:, 0], _panel_sums(pending.ravel(), d, nodes, backend)[::2]))
    accepted.sort(key=lambda item: item[0])
    value = math.fsum(v for _, v, _ in accepted)
    error = math.fsum(e for _, _, e in accepted)
    return value, error


def _power_series_coefficients(d: int, order: int) -> list[Fraction]:
    """Coefficients of ``(sum_k a_k u^k)^d`` through ``u^(order-1)``."""
    a = [Fraction(1)]
    for k in range(1, order):
        a.append(a[-1] * (2 * k - 1) ** 2 / (8 * k))
    out = [Fraction(1)] + [Fraction(0)] * (order - 1)
    for _ in range(d):
        out = [sum(out[i] * a[m - i] for i in range(m + 1)) for m in range(order)]
    return out


def integrate_tail(d: int, cutoff: float, tail_order: int,
                   precision_bits: int = 128) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Integral beyond ``cutoff`` with ``I_0`` replaced by ``tail_order`` asymptotic terms.

    ``e^-t I_0(t/d)^d ~ (d/(2 pi t))^(d/2) sum_m b_m (d/t)^m``, so each term
    integrates to a power of the cutoff.  Returns (value, size of last term).
    """
    b = _power_series_coefficients(d, tail_order)
    with working_precision(precision_bits):
        T = mp.mpf(cutoff)
        half = mp.mpf(d) / 2
        pref = (mp.mpf(d) / (2 * mp.pi)) ** half
        terms = [pref * mp.mpf(bm.numerator) / bm.denominator * mp.mpf(d) ** m
                 * T ** (-(half + m)) / (half + m) for m, bm in enumerate(b)]
        return mp.e1(T) - mp.fsum(terms), abs(terms[-1])


def h_bessel(d: int, config: QuadratureConfig | None = None, precision_bits: int = 128,
             backend: str | None = None) -> mpmath.mpf:
    """Non-rigorous value of h_d from the Bessel integral.

    Raises :class:`AccuracyNotReached` (carrying the best estimate) when the
    combined quadrature and tail error estimates exceed ``rel_tol``.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    config = config or QuadratureConfig()
    T = config.cutoff_for(d)
    head, head_err = integrate_head(d, T, config.rel_tol, config.nodes, config.max_depth, backend)
    tail, tail_err = integrate_tail(d, T, config.tail_order, precision_bits)
    with working_precision(precision_bits):
        integral = mp.mpf(head) + tail
        value = mp.log(2 * d) + integral
        error = head_err + float(tail_err)
        if error > config.rel_tol * max(abs(float(integral)), 1e-300):
            raise AccuracyNotReached(
                f"d={d}: error estimate {error:.3g} exceeds rel_tol {config.rel_tol:g} "
                f"at cutoff {T:g}", float(value), error)
        return value
