"""Truncated power-series algebra on coefficient arrays.

All series are stored as 1-D numpy arrays of Taylor coefficients in
ascending order, a[k] being the coefficient of t**k.  These routines are
the exact backbone for reciprocal-transform coefficients and for the
Toeplitz determinant identity; nothing here ever differentiates
numerically.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def series_mul(a, b, order: int) -> np.ndarray:
    """Cauchy product of two coefficient arrays, truncated to ``order`` terms."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = min(order, len(a) + len(b) - 1)
    out = np.convolve(a, b)[:n]
    if n < order:
        out = np.pad(out, (0, order - n))
    return out


def series_inverse(a, order: int) -> np.ndarray:
    """Coefficients of 1/A(t) to ``order`` terms, requiring a[0] != 0.

    Uses the standard recurrence b_0 = 1/a_0,
    b_m = -(1/a_0) * sum_{k=1..m} a_k b_{m-k}.
    """
    a = np.asarray(a)
    if len(a) == 0 or a[0] == 0:
        raise DomainError("series_inverse needs a nonzero constant term")
    dtype = np.result_type(a.dtype, float)
    b = np.zeros(order, dtype=dtype)
    b[0] = 1.0 / a[0]
    for m in range(1, order):
        kmax = min(m, len(a) - 1)
        acc = np.dot(a[1:kmax + 1], b[m - 1::-1][:kmax])
        b[m] = -acc / a[0]
    return b


def series_exp(c, order: int) -> np.ndarray:
    """Coefficients of exp(C(t)) to ``order`` terms, requiring c[0] = 0.

    Recurrence from E' = C' E:  e_m = (1/m) sum_{k=1..m} k c_k e_{m-k}.
    """
    c = np.asarray(c)
    if len(c) > 0 and c[0] != 0:
        raise DomainError("series_exp expects a series with zero constant term")
    dtype = np.result_type(c.dtype, float) if len(c) else float
    e = np.zeros(order, dtype=dtype)
    e[0] = 1.0
    kw = np.arange(len(c)) * np.asarray(c, dtype=dtype)
    for m in range(1, order):
        kmax = min(m, len(c) - 1)
        acc = np.dot(kw[1:kmax + 1], e[m - 1::-1][:kmax])
        e[m] = acc / m
    return e


def series_eval(a, t):
    """Evaluate a coefficient array at scalar or array argument by Horner."""
    a = np.asarray(a)
    t = np.asarray(t)
    out = np.zeros(t.shape, dtype=np.result_type(a.dtype, t.dtype))
    for coeff in a[::-1]:
        out = out * t + coeff
    return out
