"""Float64 kernels for the Bessel-integral cross-check.

Two interchangeable backends evaluate the same functions on arrays:

* ``numba`` -- scalar loops compiled with ``@njit`` (default when importable);
* ``numpy`` -- vectorised, branch-free array code.

Set ``TREEENTROPY_KERNELS=numpy`` to force the fallback.  Results agree to
rounding error; ``benchmarks/bench_kernels.py`` compares their speed.
"""
from __future__ import annotations

import math
import os

import numpy as np

# Below the crossover the power series is used; its terms are all positive so
# it loses nothing to cancellation.  At 20 the asymptotic series is good to
# ~1e-19 relative.
CROSSOVER = 20.0
SERIES_TERMS = 80
ASYMPTOTIC_TERMS = 40

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _asymptotic_coefficients(n: int) -> np.ndarray:
    """``a_k = ((2k-1)!!)^2 / (k! 8^k)`` for ``I_0(y) e^-y sqrt(2 pi y) ~ sum a_k y^-k``."""
    a = np.empty(n)
    a[0] = 1.0
    for k in range(1, n):
        a[k] = a[k - 1] * (2 * k - 1) ** 2 / (8.0 * k)
    return a


ASYMPTOTIC_COEFFS = _asymptotic_coefficients(ASYMPTOTIC_TERMS)


# -- numpy backend ---------------------------------------------------------------


def _np_i0_minus_one(y: np.ndarray) -> np.ndarray:
    """``I_0(y) - 1`` by the power series (accurate for small y)."""
    q = (0.5 * y) ** 2
    term = q.copy()
    total = q.copy()
    for m in range(2, SERIES_TERMS):
        term = term * q / (m * m)
        total = total + term
    return total


def _np_log_i0_asymptotic(y: np.ndarray) -> np.ndarray:
    """``log(I_0(y)) - y`` from the asymptotic series, last term halved."""
    inv = 1.0 / y
    s = np.zeros_like(y)
    p = np.ones_like(y)
    for k in range(ASYMPTOTIC_TERMS - 1):
        s = s + ASYMPTOTIC_COEFFS[k] * p
        p = p * inv
    s = s + 0.5 * ASYMPTOTIC_COEFFS[ASYMPTOTIC_TERMS - 1] * p
    return np.log(s) - _HALF_LOG_2PI - 0.5 * np.log(y)


def np_i0e(x) -> np.ndarray:
    x = np.abs(np.asarray(x, dtype=np.float64))
    small = x < CROSSOVER
    out = np.empty_like(x)
    xs = x[small]
    out[small] = (1.0 + _np_i0_minus_one(xs)) * np.exp(-xs)
    out[~small] = np.exp(_np_log_i0_asymptotic(x[~small]))
    return out


def np_bessel_integrand(t, d: int) -> np.ndarray:
    """``e^-t / t * (1 - I_0(t/d)^d)`` for ``t > 0``."""
    t = np.asarray(t, dtype=np.float64)
    y = t / d
    out = np.empty_like(t)
    small = y < CROSSOVER
    ts, ys = t[small], y[small]
    # 1 - I0^d = -expm1(d log1p(I0 - 1)) keeps full accuracy as t -> 0
    g = d * np.log1p(_np_i0_minus_one(ys))
    gs = np.minimum(g, 700.0)
    near = -np.exp(-ts) * np.expm1(gs)
    far = np.exp(-ts) - np.exp(g - ts)
    out[small] = np.where(g < 1.0, near, far) / ts
    tl, yl = t[~small], y[~small]
    out[~small] = (np.exp(-tl) - np.exp(d * _np_log_i0_asymptotic(yl))) / tl
    return out


# -- numba backend ---------------------------------------------------------------

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

if njit is not None:

    @njit(cache=False)
    def _nb_i0_minus_one(y):
        q = (0.5 * y) ** 2
        term = q
        total = q
        for m in range(2, SERIES_TERMS):
            term = term * q / (m * m)
            total += term
            if term < 1e-18 * total:
                break
        return total

    @njit(cache=False)
    def _nb_log_i0_asymptotic(y, coeffs):
        inv = 1.0 / y
        s = 0.0
        p = 1.0
        n = coeffs.shape[0]
        for k in range(n - 1):
            s += coeffs[k] * p
            p *= inv
        s += 0.5 * coeffs[n - 1] * p
        return math.log(s) - _HALF_LOG_2PI - 0.5 * math.log(y)

    @njit(cache=False)
    def _nb_i0e(x, coeffs):
        out = np.empty_like(x)
        for i in range(x.shape[0]):
            xi = abs(x[i])
            if xi < CROSSOVER:
                out[i] = (1.0 + _nb_i0_minus_one(xi)) * math.exp(-xi)
            else:
                out[i] = math.exp(_nb_log_i0_asymptotic(xi, coeffs))
        return out

    @njit(cache=False)
    def _nb_bessel_integrand(t, d, coeffs):
        out = np.empty_like(t)
        for i in range(t.shape[0]):
            ti = t[i]
            y = ti / d
            if y < CROSSOVER:
                g = d * math.log1p(_nb_i0_minus_one(y))
                if g < 1.0:
                    out[i] = -math.exp(-ti) * math.expm1(g) / ti
                else:
                    out[i] = (math.exp(-ti) - math.exp(g - ti)) / ti
            else:
                out[i] = (math.exp(-ti) - math.exp(d * _nb_log_i0_asymptotic(y, coeffs))) / ti
        return out

    def nb_i0e(x) -> np.ndarray:
        return _nb_i0e(np.ascontiguousarray(x, dtype=np.float64).ravel(), ASYMPTOTIC_COEFFS)

    def nb_bessel_integrand(t, d: int) -> np.ndarray:
        return _nb_bessel_integrand(np.ascontiguousarray(t, dtype=np.float64).ravel(), float(d),
                                    ASYMPTOTIC_COEFFS)

else:  # pragma: no cover
    nb_i0e = nb_bessel_integrand = None


def _select_backend() -> str:
    requested = os.environ.get("TREEENTROPY_KERNELS", "numba").lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(f"TREEENTROPY_KERNELS must be 'numba' or 'numpy', got {requested!r}")
    if requested == "numba" and njit is None:
        return "numpy"
    return requested


BACKEND = _select_backend()

_TABLE = {
    "numpy": (np_i0e, np_bessel_integrand),
    "numba": (nb_i0e, nb_bessel_integrand),
}


def i0e(x, backend: str | None = None) -> np.ndarray:
    """Exponentially scaled ``I_0(x) e^-|x|`` on an array."""
    return _TABLE[backend or BACKEND][0](x)


def bessel_integrand(t, d: int, backend: str | None = None) -> np.ndarray:
    return _TABLE[backend or BACKEND][1](t, d)
