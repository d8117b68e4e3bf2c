"""Weight catalog: densities, closed-form transforms, and derivative weights.

Each weight family carries an exact model of its Fourier transform (H2) or
modified Hankel transform (M), the Taylor data of the reciprocal transform,
the derivative-operator weights q_j = D^j omega, and the scalar convolutions
* (real line) and *_nu (half line).
"""

import dataclasses
import functools
import math

import numpy as np

from . import quadrature
from . import series
from . import specfun
from .errors import AccuracyError, DomainError, UsageError

_NU_MESSAGE = "nu must be -0.5, 0.5, or a nonnegative integer"


def _validated_nu(nu):
    nu = float(nu)
    if nu in (-0.5, 0.5):
        return nu
    if nu >= 0.0 and nu == int(nu):
        return nu
    raise DomainError(_NU_MESSAGE)


@dataclasses.dataclass(frozen=True)
class WeightSpec:
    """Validated parameters of one catalog weight family."""

    family: str
    space: str
    n: int = 1
    nu: float = 0.0
    variance: float = 0.0
    alpha: float = 0.0
    scale: float = 0.0
    gamma: float = 0.0
    deltas: tuple = ()
    support: str = ""
    delta_shift: float = 0.0


def gaussian(variance=1.0, n=1):
    """Gaussian weight on the real line, omega(x) = exp(-x^2/(2 v))."""
    variance = float(variance)
    if not variance > 0.0 or not math.isfinite(variance):
        raise DomainError("gaussian variance must be positive and finite")
    return with_n(WeightSpec(family="gaussian", space="H2", variance=variance), n)


def laguerre_h2(alpha, n=1):
    """Laguerre-type weight on the real line, omega(x) = x^alpha e^{-x} on x >= 0."""
    alpha = float(alpha)
    if not alpha > -1.0 or not math.isfinite(alpha):
        raise DomainError("laguerre_h2 needs alpha > -1")
    return with_n(WeightSpec(family="laguerre_h2", space="H2", alpha=alpha), n)


def laguerre_m(nu, scale=1.0, n=1):
    """Laguerre weight on the half line, omega(x) = x^nu e^{-x/s}."""
    nu = _validated_nu(nu)
    scale = float(scale)
    if not scale > 0.0 or not math.isfinite(scale):
        raise DomainError("laguerre_m scale must be positive and finite")
    return with_n(WeightSpec(family="laguerre_m", space="M", nu=nu, scale=scale), n)


def polya_product(gamma=0.0, deltas=(), support="real", n=1):
    """Product-form Polya weight on the real line, given by its transform.

    The transform is exp(-gamma z^2) prod_j exp(-i delta_j z)/(1 - i delta_j z)
    for real support, or prod_j 1/(1 - i delta_j z) for positive support.
    """
    deltas = tuple(float(d) for d in deltas)
    gamma = float(gamma)
    if support not in ("real", "positive"):
        raise DomainError("polya_product support must be 'real' or 'positive'")
    if not all(math.isfinite(d) for d in deltas) or not math.isfinite(gamma):
        raise DomainError("polya_product parameters must be finite")
    if gamma < 0.0:
        raise DomainError("polya_product gamma must be >= 0")
    if support == "positive":
        if gamma != 0.0:
            raise DomainError("positive-support polya_product cannot carry a gaussian factor")
        if any(d < 0.0 for d in deltas):
            raise DomainError("positive-support polya_product needs deltas >= 0")
        if not any(d > 0.0 for d in deltas):
            raise DomainError("positive-support polya_product needs at least one "
                              "nonzero delta (otherwise it is a point mass)")
    spec = WeightSpec(family="polya_product", space="H2", gamma=gamma,
                      deltas=deltas, support=support)
    return with_n(spec, n)


def polya_product_m(nu, deltas=(), delta_shift=0.0, n=1):
    """Product-form Polya weight on the half line, given by its Hankel transform.

    The transform is exp(-delta_shift z) prod_j 1/(1 + delta_j z).
    """
    nu = _validated_nu(nu)
    deltas = tuple(float(d) for d in deltas)
    delta_shift = float(delta_shift)
    if not all(math.isfinite(d) and d >= 0.0 for d in deltas):
        raise DomainError("polya_product_m deltas must be finite and >= 0")
    if not math.isfinite(delta_shift) or delta_shift < 0.0:
        raise DomainError("polya_product_m delta_shift must be >= 0")
    spec = WeightSpec(family="polya_product_m", space="M", nu=nu,
                      deltas=deltas, delta_shift=delta_shift)
    return with_n(spec, n)


def with_n(spec, n):
    """Revalidate a weight for matrix dimension n and stamp it on the spec."""
    n = int(n)
    if n < 1:
        raise DomainError("matrix dimension n must be >= 1")
    if spec.family == "laguerre_h2" and not spec.alpha > n - 2:
        raise DomainError("laguerre_h2 needs alpha > n-2 so every q_j is integrable")
    nonzero = sum(1 for d in spec.deltas if d != 0.0)
    if (spec.family == "polya_product" and spec.support == "real"
            and spec.gamma == 0.0 and nonzero < n + 1):
        raise DomainError("polya_product on the real line with gamma=0 needs "
                          "at least n+1 nonzero deltas")
    if spec.family == "polya_product_m" and spec.delta_shift == 0.0 and nonzero < n + 1:
        raise DomainError("polya_product_m with delta_shift=0 needs at least n+1 nonzero deltas")
    if spec.n == n:
        return spec
    return dataclasses.replace(spec, n=n)


# ---------------------------------------------------------------------------
# transforms


class TransformModel:
    """Closed-form transform of a catalog weight.

    evaluate(z) returns F omega(z) for H2 weights and H_nu omega(z) for M
    weights; value_at_zero is the total mass of the weight and
    holomorphy_radius the distance from the origin to the nearest pole.
    """

    __slots__ = ("spec", "holomorphy_radius", "value_at_zero")

    def __init__(self, spec):
        self.spec = spec
        poles = []
        if spec.family == "laguerre_h2":
            poles = [1.0]
        elif spec.family in ("polya_product", "polya_product_m"):
            poles = [1.0 / abs(d) for d in spec.deltas if d != 0.0]
        self.holomorphy_radius = min(poles) if poles else math.inf
        if spec.family == "gaussian":
            self.value_at_zero = math.sqrt(2.0 * math.pi * spec.variance)
        elif spec.family == "laguerre_h2":
            self.value_at_zero = float(specfun.gamma_fn(spec.alpha + 1.0))
        elif spec.family == "laguerre_m":
            self.value_at_zero = float(specfun.gamma_fn(spec.nu + 1.0)) * spec.scale ** (spec.nu + 1.0)
        else:
            self.value_at_zero = 1.0

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        spec = self.spec
        if spec.family == "gaussian":
            out = math.sqrt(2.0 * math.pi * spec.variance) * np.exp(-0.5 * spec.variance * z * z)
        elif spec.family == "laguerre_h2":
            w = 1.0 - 1j * z
            _pole_guard(w)
            out = specfun.gamma_fn(spec.alpha + 1.0) * w ** (-spec.alpha - 1.0)
        elif spec.family == "laguerre_m":
            out = self.value_at_zero * np.exp(-spec.scale * z)
        elif spec.family == "polya_product":
            out = np.exp(-spec.gamma * z * z)
            for d in spec.deltas:
                w = 1.0 - 1j * d * z
                _pole_guard(w)
                if spec.support == "real":
                    out = out * np.exp(-1j * d * z) / w
                else:
                    out = out / w
        else:
            out = np.exp(-spec.delta_shift * z)
            for d in spec.deltas:
                w = 1.0 + d * z
                _pole_guard(w)
                out = out / w
        return out if out.shape else complex(out)

    __call__ = evaluate


def _pole_guard(w):
    if np.any(np.abs(w) < 1e-12):
        raise DomainError("transform evaluated at (or too close to) a pole")


@functools.lru_cache(maxsize=None)
def transform_model(spec):
    return TransformModel(spec)


def eval_transform(spec, z):
    """Evaluate the weight's transform at z (closed form)."""
    return transform_model(spec).evaluate(z)


def _log_taylor_tail(spec, order):
    """Taylor coefficients of log(transform(z)/transform(0)), exact per family."""
    c = np.zeros(order, dtype=complex)
    if spec.family == "gaussian":
        if order > 2:
            c[2] = -0.5 * spec.variance
    elif spec.family == "laguerre_h2":
        for m in range(1, order):
            c[m] = (spec.alpha + 1.0) * 1j ** m / m
    elif spec.family == "laguerre_m":
        if order > 1:
            c[1] = -spec.scale
    elif spec.family == "polya_product":
        # with real support the order-1 terms of the centring phases cancel
        start = 1 if spec.support == "positive" else 2
        for m in range(start, order):
            c[m] = 1j ** m * sum(d ** m for d in spec.deltas) / m
        if order > 2:
            c[2] -= spec.gamma
    else:
        if order > 1:
            c[1] = -spec.delta_shift - sum(spec.deltas)
        for m in range(2, order):
            c[m] = (-1.0) ** m * sum(d ** m for d in spec.deltas) / m
    return c


@dataclasses.dataclass(frozen=True, eq=False)
class ReciprocalSeries:
    """Taylor data of 1/transform at the origin.

    coeffs holds the plain ascending Taylor coefficients a_l; b holds the
    l-th derivatives in the convention of the bi-orthonormal constructions
    (the H2 convention carries an extra (-i)^l, so both lists are real).
    """

    space: str
    coeffs: np.ndarray
    b: np.ndarray


@functools.lru_cache(maxsize=None)
def reciprocal_taylor(spec, order):
    """ReciprocalSeries of the weight's transform, by exact series inversion."""
    order = int(order)
    if order < 1:
        raise UsageError("reciprocal_taylor order must be >= 1")
    tail = _log_taylor_tail(spec, order)
    coeffs = series.series_exp(-tail, order) / transform_model(spec).value_at_zero
    ell = np.arange(order)
    fact = specfun.gamma_fn(ell + 1.0)
    if spec.space == "H2":
        b = (-1j) ** ell * fact * coeffs
    else:
        b = fact * coeffs
    top = max(1.0, float(np.max(np.abs(b))))
    if float(np.max(np.abs(b.imag))) > 1e-12 * top:
        raise AccuracyError("reciprocal series coefficients failed to be real",
                            details=b)
    return ReciprocalSeries(space=spec.space, coeffs=coeffs,
                            b=b.real.astype(complex))


# ---------------------------------------------------------------------------
# exponential-polynomial pieces for the product families


@functools.lru_cache(maxsize=None)
def _exp_term_groups(deltas):
    """Partial fractions of prod_l 1/(1 - i delta_l z) as density pieces.

    Returns a tuple of (delta, coeffs) where coeffs are ascending polynomial
    coefficients such that the density contribution of the group is
    poly(x) e^{-x/delta} on x >= 0 (delta > 0) or on x < 0 (delta < 0).
    The same algebra serves the Laplace reading prod 1/(1 + delta_l z).
    """
    groups = []
    for d in deltas:
        for entry in groups:
            if entry[0] == d:
                entry[1] += 1
                break
        else:
            groups.append([d, 1])
    pieces = []
    for d, mult in groups:
        # Taylor coefficients in u = 1 - i*delta*z of the product over the
        # other groups, truncated at this group's multiplicity.
        g = np.zeros(mult)
        g[0] = 1.0
        for dk, mk in groups:
            if dk == d:
                continue
            ck = 1.0 - dk / d
            rk = (dk / d) / ck
            factor = np.empty(mult)
            factor[0] = ck ** (-mk)
            for i in range(1, mult):
                factor[i] = factor[i - 1] * (-(mk + i - 1.0) / i) * rk
            g = series.series_mul(g, factor, mult)
        coeffs = np.empty(mult)
        for r in range(1, mult + 1):
            amp = g[mult - r] / (abs(d) ** r * math.factorial(r - 1))
            if d < 0.0:
                amp *= (-1.0) ** (r - 1)
            coeffs[r - 1] = amp
        pieces.append((d, coeffs))
    return tuple(pieces)


def _dpoly(coeffs, delta):
    """One application of D = -d/dx to poly(x) e^{-x/delta}, on the poly side."""
    out = coeffs / delta
    out[:-1] -= np.arange(1, coeffs.size) * coeffs[1:]
    return out


def _eval_exp_pieces(pieces, x):
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape)
    has_pos = any(d > 0.0 for d, _ in pieces)
    for d, coeffs in pieces:
        if d > 0.0:
            mask = x >= 0.0
        elif has_pos:
            mask = x < 0.0
        else:
            mask = x <= 0.0
        if not np.any(mask):
            continue
        xm = x[mask]
        out[mask] += np.polynomial.polynomial.polyval(xm, coeffs) * np.exp(-xm / d)
    return out


@functools.lru_cache(maxsize=None)
def _polya_h2_pieces(spec, j):
    """Derivative pieces of a gamma=0 polya_product: D^j applied termwise."""
    nonzero = tuple(d for d in spec.deltas if d != 0.0)
    pieces = []
    for d, coeffs in _exp_term_groups(nonzero):
        c = coeffs.copy()
        for _ in range(j):
            c = _dpoly(c, d)
        pieces.append((d, c))
    return tuple(pieces)


def _polya_h2_shift(spec):
    if spec.support == "real":
        return sum(spec.deltas)
    return 0.0


# ---------------------------------------------------------------------------
# mixture machinery for polya_product_m

# The Hankel transform e^{-dz} prod 1/(1+d_j z) is the Laplace transform of a
# shifted phase-type density, so omega is an exact scale mixture of
# x^nu e^{-x/s} kernels over that density.


@functools.lru_cache(maxsize=None)
def _mixture_pieces(spec):
    nonzero = tuple(d for d in spec.deltas if d != 0.0)
    if not nonzero:
        return ()
    return _exp_term_groups(nonzero)


def _mixture_nodes(spec, umax):
    """Quadrature nodes s_i and weights W_i = w_i * mixing_density(s_i).

    Integrating h against the mixing density is then sum h(s_i) W_i; umax is
    the largest argument that will multiply 1/s inside h, used to size the
    upper truncation.
    """
    pieces = _mixture_pieces(spec)
    shift = spec.delta_shift
    if not pieces:
        return np.array([shift]), np.array([1.0])
    dmax = max(d for d, _ in pieces)
    dmin = min(d for d, _ in pieces)
    total = sum(spec.deltas)
    hi = shift + total + dmax * (46.0 + 2.0 * math.sqrt(max(umax, 1.0) / dmax))
    edges = [0.0]
    width = dmin / 16.0
    while edges[-1] < hi - shift:
        edges.append(min(edges[-1] + width, hi - shift))
        width *= 2.0
    nodes, wts = quadrature.composite_rule(np.array(edges), n_nodes=24)
    dens = _eval_exp_pieces(pieces, nodes)
    return nodes + shift, wts * dens


# ---------------------------------------------------------------------------
# pointwise weights


def eval_weight(spec, x):
    """omega(x); vectorized over x, zero outside the support."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    # clip the sign noise a quadrature route can leave in far tails
    out = np.maximum(_one_point_impl(spec, 0, x), 0.0)
    return float(out[0]) if scalar else out


def one_point_weight(spec, j, x):
    """q_j(x) = D^j omega(x) with D = -d/dx (H2) or d/dx x^{nu+1} d/dx x^{-nu} (M)."""
    j = int(j)
    if j < 0:
        raise UsageError("one_point_weight index must be >= 0")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = _one_point_impl(spec, j, x)
    return float(out[0]) if scalar else out


def _one_point_impl(spec, j, x):
    if spec.family == "gaussian":
        v = spec.variance
        rt = math.sqrt(v)
        return v ** (-0.5 * j) * specfun.hermite_monic(j, x / rt) * np.exp(-0.5 * x * x / v)
    if spec.family == "laguerre_h2":
        a = spec.alpha - j
        out = np.zeros(x.shape)
        mask = x > 0.0 if a < 0.0 else x >= 0.0
        xm = x[mask]
        with np.errstate(divide="ignore"):
            out[mask] = specfun.laguerre_monic(j, a, xm) * xm ** a * np.exp(-xm)
        return out
    if spec.family == "laguerre_m":
        s = spec.scale
        out = np.zeros(x.shape)
        mask = x > 0.0 if spec.nu < 0.0 else x >= 0.0
        xm = x[mask]
        with np.errstate(divide="ignore"):
            out[mask] = (s ** (-j) * specfun.laguerre_monic(j, spec.nu, xm / s)
                         * xm ** spec.nu * np.exp(-xm / s))
        return out
    if spec.family == "polya_product":
        if spec.gamma > 0.0:
            return _inverse_fourier_h2(spec, x, j)
        return _eval_exp_pieces(_polya_h2_pieces(spec, j), x + _polya_h2_shift(spec))
    return _polya_m_one_point(spec, j, x)


def _polya_m_one_point(spec, j, x):
    nu = spec.nu
    gam = float(specfun.gamma_fn(nu + 1.0))
    out = np.zeros(x.shape)
    mask = x > 0.0 if nu < 0.0 else x >= 0.0
    xm = x[mask]
    if xm.size:
        snodes, sweights = _mixture_nodes(spec, float(np.max(xm)))
        ratio = xm[:, None] / snodes[None, :]
        with np.errstate(divide="ignore"):
            vals = (specfun.laguerre_monic(j, nu, ratio) * np.exp(-ratio)
                    * snodes[None, :] ** (-nu - 1.0 - j) * xm[:, None] ** nu)
        out[mask] = vals @ sweights / gam
    return out


@functools.lru_cache(maxsize=256)
def _fourier_rule(spec, j, xcap):
    """Oscillation-aware rule for the inverse Fourier integral, |x| <= xcap."""
    zmax = math.sqrt((55.0 + 6.0 * j) / spec.gamma)
    width = min(zmax / 6.0, 8.0 / xcap)
    edges = np.arange(0.0, zmax + width, width)
    z, wts = quadrature.composite_rule(edges, n_nodes=32)
    core = (1j * z) ** j * transform_model(spec).evaluate(z.astype(complex)) * wts
    return z, core


def _inverse_fourier_h2(spec, x, j):
    """q_j by inverse Fourier quadrature; needs the gaussian factor for decay."""
    xtop = float(np.max(np.abs(x))) if x.size else 1.0
    xcap = 2.0 ** math.ceil(math.log2(max(1.0, xtop)))
    z, core = _fourier_rule(spec, j, xcap)
    out = np.empty(x.shape)
    for lo in range(0, x.size, 4096):
        chunk = x[lo:lo + 4096]
        phase = np.exp(-1j * np.outer(chunk, z))
        out[lo:lo + 4096] = (phase @ core).real / math.pi
    return out


# ---------------------------------------------------------------------------
# support metadata


def support_lower(spec):
    """Left edge of the support (can be -inf)."""
    if spec.space == "M" or spec.family == "laguerre_h2":
        return 0.0
    if spec.family == "polya_product":
        if spec.support == "positive":
            return 0.0
        if spec.gamma == 0.0 and all(d >= 0.0 for d in spec.deltas):
            return -float(sum(spec.deltas))
    return -math.inf


def support_breakpoints(spec):
    """Points where the weight (or a low derivative) has a kink."""
    if spec.family == "laguerre_h2":
        return (0.0,)
    if spec.family == "polya_product" and spec.gamma == 0.0:
        return (-_polya_h2_shift(spec),)
    if spec.space == "M":
        return (0.0,)
    return ()


def _center_and_width(spec):
    if spec.family == "gaussian":
        return 0.0, math.sqrt(spec.variance)
    if spec.family == "laguerre_h2":
        return spec.alpha + 1.0, math.sqrt(spec.alpha + 1.0) + 1.0
    if spec.family == "laguerre_m":
        return spec.scale * (spec.nu + 1.0), spec.scale * (math.sqrt(spec.nu + 1.5) + 1.0)
    if spec.family == "polya_product":
        mean = 0.0 if spec.support == "real" else sum(spec.deltas)
        width = math.sqrt(2.0 * spec.gamma + sum(d * d for d in spec.deltas)) + 1e-8
        return mean, width
    total = spec.delta_shift + sum(spec.deltas)
    mean = (spec.nu + 1.0) * total
    return mean, total * (math.sqrt(spec.nu + 1.5) + 1.0)


def support_window(spec):
    """Finite [lo, hi] outside which the weight is below 1e-16 of its peak."""
    center, width = _center_and_width(spec)
    lower = support_lower(spec)
    lo = center - 4.0 * width
    hi = center + 4.0 * width
    if lower > -math.inf:
        lo = lower
    for _ in range(80):
        probes = np.linspace(lo, hi, 129)
        vals = eval_weight(spec, probes)
        peak = float(np.max(vals))
        if peak <= 0.0:
            hi += 4.0 * width
            continue
        grow = False
        if vals[-1] > 1e-16 * peak:
            hi += 0.6 * (hi - lo)
            grow = True
        if lower == -math.inf and vals[0] > 1e-16 * peak:
            lo -= 0.6 * (hi - lo)
            grow = True
        if not grow:
            return float(lo), float(hi)
    raise AccuracyError("support window search failed to terminate")


# ---------------------------------------------------------------------------
# radial shifts on M


def radial_profile(spec, u):
    """g(u) = omega(u) u^{-nu}, the smooth radial profile of an M weight."""
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    if spec.family == "laguerre_m":
        out = np.exp(-u / spec.scale)
    elif spec.family == "polya_product_m":
        gam = float(specfun.gamma_fn(spec.nu + 1.0))
        snodes, sweights = _mixture_nodes(spec, float(np.max(u)) if u.size else 1.0)
        out = np.empty(u.shape)
        for lo in range(0, u.size, 4096):
            chunk = u[lo:lo + 4096]
            kern = np.exp(-chunk[:, None] / snodes[None, :]) * snodes[None, :] ** (-spec.nu - 1.0)
            out[lo:lo + 4096] = kern @ sweights / gam
    else:
        raise UsageError("radial profiles exist only for half-line weights")
    return float(out[0]) if scalar else out


def _profile_rate(spec):
    """Upper bound on -d log g/du, used to size the Gegenbauer rule."""
    if spec.family == "laguerre_m":
        return 1.0 / spec.scale
    floor = spec.delta_shift
    nonzero = [d for d in spec.deltas if d != 0.0]
    if nonzero:
        floor = max(floor, min(nonzero) * 0.25)
    return 1.0 / floor


def radial_shift(spec, y, x):
    """The shifted weight omega(. ; x) at y: the radial mean of the profile.

    For nu > -1/2 this is y^nu times the Gauss-Gegenbauer average of
    g(y + x - 2 sqrt(xy) t); for nu = -1/2 it is the two-point reflection
    formula. x is the (positive) shift eigenvalue.
    """
    if spec.space != "M":
        raise UsageError("radial shifts are defined for M-space weights only")
    if not x >= 0.0:
        raise UsageError("radial shifts need a nonnegative shift eigenvalue")
    y = np.asarray(y, dtype=float)
    scalar = y.ndim == 0
    y = np.atleast_1d(y)
    out = np.zeros(y.shape)
    mask = y > 0.0 if spec.nu < 0.0 else y >= 0.0
    ym = y[mask]
    if ym.size == 0:
        return float(out[0]) if scalar else out
    if x == 0.0:
        with np.errstate(divide="ignore"):
            out[mask] = radial_profile(spec, ym) * ym ** spec.nu
        return float(out[0]) if scalar else out
    rt = np.sqrt(ym * x)
    if spec.nu == -0.5:
        sm = (np.sqrt(ym) - math.sqrt(x)) ** 2
        sp = (np.sqrt(ym) + math.sqrt(x)) ** 2
        vals = 0.5 * (radial_profile(spec, sm) + radial_profile(spec, sp))
    else:
        c = 2.0 * float(np.max(rt)) * _profile_rate(spec)
        count = 24 + int(0.75 * c)
        count = min(32 * ((count + 31) // 32), 768)
        rule = quadrature.gauss_gegenbauer_rule(count, spec.nu)
        mu0 = float(np.sum(rule.weights))
        vals = np.zeros(ym.shape)
        for lo in range(0, ym.size, 2048):
            sl = slice(lo, lo + 2048)
            u = ym[sl, None] + x - 2.0 * rt[sl, None] * rule.nodes[None, :]
            np.maximum(u, 0.0, out=u)
            vals[sl] = radial_profile(spec, u.ravel()).reshape(u.shape) @ rule.weights / mu0
    with np.errstate(divide="ignore"):
        out[mask] = vals * ym ** spec.nu
    return float(out[0]) if scalar else out


def radial_shift_bessel(spec, y, x):
    """Bessel-kernel route for the shifted weight; cross-check of radial_shift.

    For laguerre_m this is the closed I_nu form; for polya_product_m the same
    form integrated over the exact scale mixture.
    """
    if not x > 0.0:
        raise UsageError("the Bessel route needs a positive shift eigenvalue")
    y = np.asarray(y, dtype=float)
    scalar = y.ndim == 0
    y = np.atleast_1d(y)
    nu = spec.nu
    gam = float(specfun.gamma_fn(nu + 1.0))
    out = np.zeros(y.shape)
    mask = y > 0.0
    ym = y[mask]
    if ym.size:
        if spec.family == "laguerre_m":
            s = spec.scale
            arg = 2.0 * np.sqrt(ym * x) / s
            damped = specfun.bessel_i_scaled(nu, arg) * np.exp(-((np.sqrt(ym) - math.sqrt(x)) ** 2) / s)
            out[mask] = s ** nu * gam * (ym / x) ** (0.5 * nu) * damped
        elif spec.family == "polya_product_m":
            snodes, sweights = _mixture_nodes(spec, float(np.max(ym)) + x)
            arg = 2.0 * np.sqrt(ym[:, None] * x) / snodes[None, :]
            damped = (specfun.bessel_i_scaled(nu, arg)
                      * np.exp(-((np.sqrt(ym[:, None]) - math.sqrt(x)) ** 2) / snodes[None, :]))
            out[mask] = (ym / x) ** (0.5 * nu) * ((damped / snodes[None, :]) @ sweights)
        else:
            raise UsageError("radial shifts exist only for half-line weights")
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# convolutions


def convolved_spec(w1, w2):
    """Closed-form catalog reduction of a convolution, or None.

    Returns (spec, c) with transform(w1)*transform(w2) = c * transform(spec).
    """
    if w1.space != w2.space or w1.nu != w2.nu:
        return None
    n = max(w1.n, w2.n)
    fams = {w1.family, w2.family}
    if fams == {"gaussian"}:
        v1, v2 = w1.variance, w2.variance
        c = math.sqrt(2.0 * math.pi * v1 * v2 / (v1 + v2))
        return gaussian(v1 + v2, n=n), c
    if fams == {"laguerre_h2"}:
        a = w1.alpha + w2.alpha + 1.0
        g = specfun.gamma_fn
        c = float(g(w1.alpha + 1.0) * g(w2.alpha + 1.0) / g(a + 1.0))
        return laguerre_h2(a, n=n), c
    if fams == {"laguerre_m"}:
        s1, s2 = w1.scale, w2.scale
        nu = w1.nu
        c = float(specfun.gamma_fn(nu + 1.0)) * (s1 * s2 / (s1 + s2)) ** (nu + 1.0)
        return laguerre_m(nu, s1 + s2, n=n), c
    if fams == {"polya_product"} and w1.support == w2.support:
        return polya_product(w1.gamma + w2.gamma, w1.deltas + w2.deltas,
                             support=w1.support, n=n), 1.0
    if fams == {"polya_product_m"}:
        return polya_product_m(w1.nu, w1.deltas + w2.deltas,
                               w1.delta_shift + w2.delta_shift, n=n), 1.0
    if fams == {"gaussian", "polya_product"}:
        ga, po = (w1, w2) if w1.family == "gaussian" else (w2, w1)
        if po.support == "real":
            c = math.sqrt(2.0 * math.pi * ga.variance)
            return polya_product(po.gamma + 0.5 * ga.variance, po.deltas,
                                 support="real", n=n), c
        return None
    if fams == {"laguerre_m", "polya_product_m"}:
        la, po = (w1, w2) if w1.family == "laguerre_m" else (w2, w1)
        nu = la.nu
        c = float(specfun.gamma_fn(nu + 1.0)) * la.scale ** (nu + 1.0)
        return polya_product_m(nu, po.deltas, po.delta_shift + la.scale, n=n), c
    return None


def convolve(w1, w2, x):
    """(omega * sigma)(x) on H2 or (omega *_nu sigma)(x) on M, by quadrature."""
    if w1.space != w2.space:
        raise UsageError("convolve needs weights on the same matrix space")
    if w1.space == "M" and w1.nu != w2.nu:
        raise UsageError("convolve needs matching nu")
    x = float(x)
    if w1.space == "H2":
        breaks = tuple(support_breakpoints(w2))
        breaks += tuple(x - b for b in support_breakpoints(w1))

        def f(t):
            return eval_weight(w1, x - t) * eval_weight(w2, t)

        # 96 nodes per panel: fractional-power kinks at the support edges
        # converge like N^{-2(1+p)}, and 32 leaves ~1e-8 behind
        return float(quadrature.real_line_integrate(f, breakpoints=breaks,
                                                    n_nodes=96))
    if x < 0.0:
        return 0.0
    if x == 0.0 and w1.nu < 0.0:
        return math.inf
    nu = w1.nu

    def f(t):
        # the Gegenbauer/reflection mean is symmetric in (evaluation point,
        # shift slot), so the integration variable can sit in the vectorized
        # slot: RS(w1; x, t) = x^nu / t^nu * RS(w1; t, x)
        rs = radial_shift(w1, t, x) * x ** nu / t ** nu
        return rs * eval_weight(w2, t)

    return float(quadrature.half_line_integrate(f))
