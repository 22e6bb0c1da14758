"""Special functions used by the closed-form pieces of the response."""

from __future__ import annotations

import math

import numpy as np
from scipy import special

__all__ = ["erfc", "vacuum_static_term", "x_minus_sin", "sinh_minus_x"]


def erfc(x):
    """Complementary error function, 1 - erf(x).

    Backed by the Cephes/libm implementation (``scipy.special.erfc``), whose
    absolute error is below 1e-15 on the whole real line. Accepts scalars or
    arrays.
    """
    if np.ndim(x) == 0:
        return math.erfc(float(x))
    return special.erfc(np.asarray(x, dtype=float))


def vacuum_static_term(Omega_sigma):
    """Response of an inertial detector far from any boundary (lambda = 1).

    (1/4pi) [exp(-W^2) - sqrt(pi) W erfc(W)]  with  W = Omega*sigma.
    """
    w = np.asarray(Omega_sigma, dtype=float)
    out = (np.exp(-w * w) - math.sqrt(math.pi) * w * special.erfc(w)) / (4.0 * math.pi)
    return float(out) if out.ndim == 0 else out


# Taylor coefficients of x - sin x and sinh x - x, in powers of x^2 after x^3/6.
_SERIES_TERMS = 9


def x_minus_sin(x):
    """x - sin(x) without cancellation for small |x|."""
    if np.ndim(x) == 0:
        return _x_minus_sin_scalar(float(x))
    x = np.asarray(x, dtype=float)
    out = x - np.sin(x)
    small = np.abs(x) < 0.5
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs * x2 / 6.0
        acc = term.copy()
        for k in range(2, _SERIES_TERMS):
            term = -term * x2 / ((2 * k) * (2 * k + 1))
            acc += term
        out[small] = acc
    return out


def sinh_minus_x(x):
    """sinh(x) - x without cancellation for small |x|."""
    if np.ndim(x) == 0:
        return _sinh_minus_x_scalar(float(x))
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        out = np.sinh(x) - x
    small = np.abs(x) < 0.5
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs * x2 / 6.0
        acc = term.copy()
        for k in range(2, _SERIES_TERMS):
            term = term * x2 / ((2 * k) * (2 * k + 1))
            acc += term
        out[small] = acc
    return out


def _x_minus_sin_scalar(x: float) -> float:
    if abs(x) >= 0.5:
        return x - math.sin(x)
    x2 = x * x
    term = x * x2 / 6.0
    acc = term
    for k in range(2, _SERIES_TERMS):
        term = -term * x2 / ((2 * k) * (2 * k + 1))
        acc += term
    return acc


def _sinh_minus_x_scalar(x: float) -> float:
    if abs(x) >= 0.5:
        return math.sinh(x) - x
    x2 = x * x
    term = x * x2 / 6.0
    acc = term
    for k in range(2, _SERIES_TERMS):
        term = term * x2 / ((2 * k) * (2 * k + 1))
        acc += term
    return acc
