"""Special functions needed by the kernel and weight formulas.

Gamma via the Lanczos approximation, monic probabilists' Hermite and monic
generalized Laguerre polynomials by their three-term recurrences, and the
Bessel functions J_nu, I_nu, K_nu for real order nu >= -1/2.  The entire
combinations jf_nu(u) = J_nu(2 sqrt u)/u^(nu/2) and its I-counterpart are
exposed separately because the Hankel-transform formulas are written in
terms of them and they stay finite at u = 0.

Everything is pure and accepts numpy arrays for the argument; order
parameters are scalars.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

# Lanczos coefficients, g = 7, 9 terms (classic double precision set).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT2PI = math.sqrt(2.0 * math.pi)


def gamma_fn(x):
    """Gamma function for real or complex argument away from the poles.

    Satisfies gamma_fn(x + 1) = x * gamma_fn(x) to about 1e-14 relative.
    Raises DomainError at nonpositive integers.
    """
    x = np.asarray(x)
    scalar = x.ndim == 0
    z = x.astype(complex if np.iscomplexobj(x) else float)[None] if scalar else x + 0.0

    real_part = z.real if np.iscomplexobj(z) else z
    at_pole = (real_part <= 0) & (np.abs(z - np.round(real_part)) < 1e-300)
    if np.any(at_pole):
        raise DomainError("gamma_fn pole at nonpositive integer argument")

    out = np.empty(z.shape, dtype=z.dtype if np.iscomplexobj(z) else float)
    small = real_part < 0.5
    if np.any(small):
        # reflection formula keeps the Lanczos sum in its good half plane
        zs = z[small]
        out[small] = np.pi / (np.sin(np.pi * zs) * _reflected_gamma(1.0 - zs))
    if np.any(~small):
        out[~small] = _reflected_gamma(z[~small])
    return out[0] if scalar else out


def _reflected_gamma(z):
    z = z - 1.0
    acc = np.full(z.shape, _LANCZOS_C[0], dtype=z.dtype)
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT2PI * t ** (z + 0.5) * np.exp(-t) * acc


class PolynomialCoeffs:
    """A polynomial stored as ascending coefficients.

    ``coeffs[k]`` multiplies x**k; evaluation is Horner's rule, which the
    callers keep to degree <= 32 (higher degrees go through the recurrence
    evaluators instead).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.atleast_1d(np.asarray(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x)
        out = np.zeros(x.shape, dtype=np.result_type(self.coeffs.dtype, x.dtype))
        for c in self.coeffs[::-1]:
            out = out * x + c
        return out if out.ndim else out[()]

    def __repr__(self):
        return f"PolynomialCoeffs({self.coeffs.tolist()})"


def hermite_monic(j: int, x):
    """Monic probabilists' Hermite H_j(x), from H_{j+1} = x H_j - j H_{j-1}."""
    x = np.asarray(x, dtype=float)
    h_prev = np.zeros(x.shape)
    h = np.ones(x.shape)
    for k in range(j):
        h, h_prev = x * h - k * h_prev, h
    return h if h.ndim else h[()]


def hermite_monic_coeffs(j: int) -> PolynomialCoeffs:
    """Coefficient form of the monic Hermite polynomial."""
    prev = np.zeros(1)
    cur = np.ones(1)
    for k in range(j):
        nxt = np.zeros(k + 2)
        nxt[1:] = cur
        nxt[:len(prev)] -= k * prev
        prev, cur = cur, nxt
    return PolynomialCoeffs(cur)


def laguerre_monic(j: int, alpha: float, x):
    """Monic generalized Laguerre L_j^(alpha)(x).

    Recurrence: L_{j+1} = (x - (2j + alpha + 1)) L_j - j (j + alpha) L_{j-1}.
    """
    x = np.asarray(x, dtype=float)
    l_prev = np.zeros(x.shape)
    l = np.ones(x.shape)
    for k in range(j):
        l, l_prev = (x - (2 * k + alpha + 1)) * l - k * (k + alpha) * l_prev, l
    return l if l.ndim else l[()]


def laguerre_monic_coeffs(j: int, alpha: float) -> PolynomialCoeffs:
    prev = np.zeros(1)
    cur = np.ones(1)
    for k in range(j):
        nxt = np.zeros(k + 2)
        nxt[1:] = cur
        nxt[:k + 1] -= (2 * k + alpha + 1) * cur
        nxt[:len(prev)] -= k * (k + alpha) * prev
        prev, cur = cur, nxt
    return PolynomialCoeffs(cur)


# ---------------------------------------------------------------------------
# Bessel functions.
#
# Three regimes for J: ascending series while cancellation is harmless
# (x <= 12), Miller backward recursion up to the uniform switch point
# 30 + nu^2, and the Hankel asymptotic expansion beyond it.  Series are
# truncated once a term drops below 1e-17 of the partial sum.

_SERIES_SWITCH = 30.0
_MILLER_SWITCH = 12.0
_MAX_SERIES_TERMS = 400


def _check_order(nu: float) -> float:
    nu = float(nu)
    if nu < -0.5:
        raise DomainError("Bessel order must satisfy nu >= -1/2")
    return nu


def bessel_jf(nu: float, u):
    """The entire function jf_nu(u) = sum_k (-u)^k / (k! Gamma(nu+k+1)).

    Equals J_nu(2 sqrt u) / u^(nu/2) for u > 0 and extends analytically to
    complex u; jf_nu(0) = 1/Gamma(nu+1).  Large positive real u is routed
    through bessel_j because the alternating series cancels there; complex
    u runs the series in extended precision, good to roughly |u| <= 300.
    """
    nu = _check_order(nu)
    u = np.asarray(u)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    if np.iscomplexobj(u):
        out = _entire_series(nu, u.astype(np.clongdouble), alternating=True).astype(complex)
        return out[0] if scalar else out

    u = u.astype(float)
    out = np.empty(u.shape)
    big = u > 36.0
    if np.any(big):
        ub = u[big]
        out[big] = bessel_j(nu, 2.0 * np.sqrt(ub)) * ub ** (-0.5 * nu)
    if np.any(~big):
        out[~big] = _entire_series(nu, u[~big], alternating=True)
    return out[0] if scalar else out


def bessel_if(nu: float, u):
    """sum_k u^k / (k! Gamma(nu+k+1)) = I_nu(2 sqrt u)/u^(nu/2), entire.

    All terms are positive for u > 0 so the series is stable at any size.
    """
    nu = _check_order(nu)
    u = np.asarray(u)
    scalar = u.ndim == 0
    out = _entire_series(nu, np.atleast_1d(u), alternating=False)
    return out[0] if scalar else out


def bessel_jg(nu: float, u):
    """u^nu * jf_nu(u), the inverse-Hankel integrand factor, for real u >= 0."""
    nu = _check_order(nu)
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    out = np.empty(u.shape)
    big = u > 36.0
    if np.any(~big):
        ub = u[~big]
        out[~big] = ub ** nu * _entire_series(nu, ub, alternating=True)
    if np.any(big):
        ub = u[big]
        out[big] = ub ** (0.5 * nu) * bessel_j(nu, 2.0 * np.sqrt(ub))
    return out[0] if scalar else out


def _entire_series(nu, u, alternating):
    sign = -1.0 if alternating else 1.0
    inv_g = 1.0 / gamma_fn(nu + 1.0)
    term = np.full(u.shape, inv_g, dtype=u.dtype if u.dtype.kind == "c" else float)
    total = term.copy()
    for k in range(1, _MAX_SERIES_TERMS):
        term = term * (sign * u) / (k * (nu + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total) + 1e-300):
            break
    return total


def bessel_j(nu: float, x):
    """Bessel function of the first kind, real order nu >= -1/2, real x >= 0."""
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if nu == 0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(x > 0, np.sqrt(2.0 / (np.pi * np.maximum(x, 1e-300))) * np.sin(x), 0.0)
        return out[0] if scalar else out
    if nu == -0.5:
        out = np.sqrt(2.0 / (np.pi * x)) * np.cos(x)
        return out[0] if scalar else out

    out = np.empty(x.shape)
    switch = _SERIES_SWITCH + nu * nu
    small = x <= _MILLER_SWITCH
    mid = (x > _MILLER_SWITCH) & (x <= switch)
    big = x > switch
    if np.any(small):
        xs = x[small]
        with np.errstate(divide="ignore"):
            out[small] = (0.5 * xs) ** nu * _entire_series(nu, 0.25 * xs * xs, alternating=True)
    if np.any(mid):
        out[mid] = _bessel_j_miller(nu, x[mid])
    if np.any(big):
        out[big] = _bessel_j_asymptotic(nu, x[big])
    return out[0] if scalar else out


def _bessel_j_miller(nu, x):
    """Backward-recurrence evaluation, stable where the ascending series
    cancels but the asymptotic expansion has not converged yet."""
    m_top = int(1.35 * float(np.max(x)) + 45)
    m_top += m_top % 2
    f_up = np.zeros(x.shape)
    f = np.full(x.shape, 1e-150)
    even = [f]  # f_k for even k, collected top down
    for k in range(m_top, 0, -1):
        f, f_up = (2.0 * (nu + k) / x) * f - f_up, f
        if k % 2 == 1:
            even.append(f)
    if nu == 0.0:
        norm = 2.0 * sum(even[:-1], np.zeros(x.shape)) + even[-1]
        return f / norm
    # general-order normalization: sum_m (nu+2m) Gamma(nu+m)/m! * J_{nu+2m}
    # equals (x/2)^nu
    count = len(even)
    ratio = np.empty(count)
    ratio[0] = gamma_fn(nu)
    for m in range(1, count):
        ratio[m] = ratio[m - 1] * (nu + m - 1) / m
    norm = np.zeros(x.shape)
    for m, fm in enumerate(reversed(even)):
        norm += (nu + 2 * m) * ratio[m] * fm
    return f * (0.5 * x) ** nu / norm


def _hankel_terms(nu, x, count=30):
    """c_k = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (j * 8x), the Hankel tail terms."""
    mu = 4.0 * nu * nu
    terms = [np.ones(x.shape)]
    c = np.ones(x.shape)
    for k in range(1, count):
        c = c * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        terms.append(c)
    return terms


def _bessel_j_asymptotic(nu, x):
    terms = _hankel_terms(nu, x)
    p = np.zeros(x.shape)
    q = np.zeros(x.shape)
    for k, t in enumerate(terms):
        if k % 2 == 0:
            p += t if (k // 2) % 2 == 0 else -t
        else:
            q += t if (k // 2) % 2 == 0 else -t
    chi = x - (0.5 * nu + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (np.cos(chi) * p - np.sin(chi) * q)


def bessel_i(nu: float, x):
    """Modified Bessel function of the first kind; overflows (inf) past
    x ~ 709, use bessel_i_scaled there."""
    return _bessel_i_impl(nu, x, scaled=False)


def bessel_i_scaled(nu: float, x):
    """exp(-x) * I_nu(x), safe for arbitrarily large x."""
    return _bessel_i_impl(nu, x, scaled=True)


def _bessel_i_impl(nu, x, scaled):
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty(x.shape)
    switch = _SERIES_SWITCH + nu * nu
    small = x <= switch
    if np.any(small):
        xs = x[small]
        u = 0.25 * xs * xs
        with np.errstate(divide="ignore"):
            pref = np.where(xs > 0, (0.5 * xs) ** nu, 1.0 if nu == 0 else (np.inf if nu < 0 else 0.0))
        val = pref * _entire_series(nu, u, alternating=False).real
        if nu == 0:
            val = np.where(xs > 0, val, 1.0)
        out[small] = np.exp(-xs) * val if scaled else val
    if np.any(~small):
        xb = x[~small]
        terms = _hankel_terms(nu, xb)
        s = np.zeros(xb.shape)
        for k, t in enumerate(terms):
            s += t if k % 2 == 0 else -t
        body = s / np.sqrt(2.0 * np.pi * xb)
        out[~small] = body if scaled else np.exp(xb) * body
    return out[0] if scalar else out


def bessel_k(nu: float, x):
    """Modified Bessel function of the second kind, x > 0.

    Half-integer orders use the closed form; 0 < x < 25 uses the
    trapezoidal rule on K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt,
    which is spectrally accurate; larger x uses the asymptotic expansion.
    """
    return _bessel_k_impl(nu, x, scaled=False)


def bessel_k_scaled(nu: float, x):
    """exp(+x) * K_nu(x), safe against underflow for large x."""
    return _bessel_k_impl(nu, x, scaled=True)


def _bessel_k_impl(nu, x, scaled):
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x <= 0):
        raise DomainError("bessel_k requires x > 0")
    if abs(nu) == 0.5:
        body = np.sqrt(np.pi / (2.0 * x))
        out = body if scaled else body * np.exp(-x)
        return out[0] if scalar else out

    out = np.empty(x.shape)
    small = x < 25.0
    if np.any(small):
        out[small] = _bessel_k_trapezoid(nu, x[small], scaled)
    if np.any(~small):
        xb = x[~small]
        s = np.zeros(xb.shape)
        for t in _hankel_terms(nu, xb):
            s += t
        body = np.sqrt(np.pi / (2.0 * xb)) * s
        out[~small] = body if scaled else body * np.exp(-xb)
    return out[0] if scalar else out


def _bessel_k_trapezoid(nu, x, scaled):
    xmin = float(np.min(x))
    # reach of the integrand: stop once x cosh t - nu t is ~ 50 past its minimum
    target = (55.0 + 10.0 * nu) / xmin + 2.0
    t_max = math.acosh(target) + 1.0
    h = 1.0 / 6.0
    t = np.arange(0.0, t_max + h, h)
    weights = np.full(t.shape, h)
    weights[0] = 0.5 * h
    expo = -np.outer(x, np.cosh(t))
    if scaled:
        expo += x[:, None]
    vals = np.exp(expo) * np.cosh(nu * t)[None, :]
    return vals @ weights
