"""Bi-orthonormal pairs, correlation kernels, and joint eigenvalue densities.

An ensemble is a catalog weight plus a matrix dimension n and a shift:
none, a fixed diagonal matrix (its eigenvalues x), or a second polynomial
ensemble added in matrix space.  In every mode the eigenvalue process is
determinantal with kernel K_n(y', y) = sum_j p_j(y') q_j(y), where the q_j
are derivative-type one-point weights (possibly shifted or convolved) and
the p_j are polynomials built from the reciprocal Taylor series of the
weight's transform.  Two independent evaluation routes are kept side by
side: the series route (exact polynomial coefficients, direct q_j calls)
and a contour route (circle quadrature against 1/transform, paired with
inverse-transform integrals on the real or half line).
"""

import dataclasses
import math

import numpy as np
import numpy.polynomial.polynomial as npoly

from . import quadrature, specfun, weights
from .errors import AccuracyError, UsageError
from .specfun import PolynomialCoeffs

GRAM_TOLERANCE = 1e-7
_MIN_SHIFT_GAP = 1e-8


# ---------------------------------------------------------------------------
# configuration records


@dataclasses.dataclass(frozen=True)
class ShiftConfig:
    """What gets added to the random matrix: nothing, a fixed matrix (through
    its eigenvalues x), or an independent second ensemble."""

    mode: str = "none"
    x: tuple = ()
    second: object = None


def no_shift():
    return ShiftConfig()


def fixed_shift(x):
    return ShiftConfig(mode="fixed", x=tuple(float(v) for v in x))


def ensemble_shift(second):
    return ShiftConfig(mode="ensemble", second=second)


@dataclasses.dataclass(frozen=True)
class EnsembleConfig:
    weight: object
    n: int
    shift: ShiftConfig


def ensemble_config(weight, n, shift=None):
    """Validate and freeze a (weight, n, shift) triple."""
    n = int(n)
    spec = weights.with_n(weight, n)
    shift = shift if shift is not None else ShiftConfig()
    if shift.mode not in ("none", "fixed", "ensemble"):
        raise UsageError("shift mode must be none, fixed, or ensemble")
    if shift.mode == "fixed":
        x = shift.x
        if len(x) != n:
            raise UsageError("fixed shift needs exactly n eigenvalues")
        if n >= 2:
            gaps = np.diff(np.sort(np.asarray(x, dtype=float)))
            if float(np.min(gaps)) <= _MIN_SHIFT_GAP:
                raise UsageError("fixed-shift eigenvalues must be pairwise "
                                 "distinct with gaps above 1e-8")
        if spec.space == "M" and min(x) <= 0.0:
            raise UsageError("fixed shifts on M need strictly positive eigenvalues")
    elif shift.mode == "ensemble":
        second = shift.second
        if not isinstance(second, EnsembleConfig):
            raise UsageError("ensemble shift needs an EnsembleConfig second member")
        if second.weight.space != spec.space:
            raise UsageError("shift ensemble must live on the same matrix space")
        if second.n != n:
            raise UsageError("shift ensemble must share the matrix dimension n")
        if spec.space == "M" and second.weight.nu != spec.nu:
            raise UsageError("shift ensemble must share the Bessel order nu")
        if second.shift.mode != "none":
            raise UsageError("the second ensemble of an ensemble shift must itself be unshifted")
    return EnsembleConfig(weight=spec, n=n, shift=shift)


# ---------------------------------------------------------------------------
# small exact pieces


def vandermonde(a):
    """prod_{b<c} (a_c - a_b); empty product 1."""
    a = np.asarray(a, dtype=float)
    out = 1.0
    for b in range(a.size):
        for c in range(b + 1, a.size):
            out *= a[c] - a[b]
    return float(out)


def normalization_constants(n, nu):
    """(C_n, C*_{n,nu}) for dimension n and Bessel order nu."""
    n = int(n)
    if n < 1:
        raise UsageError("normalization constants need n >= 1")
    j = np.arange(n, dtype=float)
    fact = specfun.gamma_fn(j + 1.0)
    n_fact = float(specfun.gamma_fn(n + 1.0))
    c = float(np.prod(np.pi ** j / fact)) / n_fact
    c_star = float(np.prod(np.pi ** (2.0 * j + nu + 1.0)
                           / (specfun.gamma_fn(j + nu + 1.0) * fact))) / n_fact
    return c, c_star


def _tmap_apply(spec, coeff_rows, order):
    """Apply the reciprocal-series monomial map T to polynomial rows.

    H2 sends y^k to sum_l binom(k,l) b_l y^(k-l); on M the map carries the
    nu-deformed factorials.  Rows are ascending coefficients, padded to
    `order` columns.
    """
    b = weights.reciprocal_taylor(spec, order).b.real
    rows = np.zeros((len(coeff_rows), order))
    for i, cf in enumerate(coeff_rows):
        rows[i, :len(cf)] = cf
    out = np.zeros_like(rows)
    if spec.space == "H2":
        for k in range(order):
            col = rows[:, k]
            if not np.any(col):
                continue
            for l in range(k + 1):
                out[:, k - l] += col * (math.comb(k, l) * b[l])
    else:
        nu = spec.nu
        gk = specfun.gamma_fn(np.arange(order) + nu + 1.0)
        fk = specfun.gamma_fn(np.arange(order) + 1.0)
        for k in range(order):
            col = rows[:, k]
            if not np.any(col):
                continue
            lead = fk[k] * gk[k]
            for s in range(k + 1):
                amp = lead * (-1.0) ** (k + s) * b[k - s] / (fk[k - s] * fk[s] * gk[s])
                out[:, s] += col * amp
    return out


def _poly_matrix_unshifted(spec, n):
    """Exact ascending coefficients of the unshifted p_0..p_{n-1} (rows)."""
    b = weights.reciprocal_taylor(spec, n).b.real
    out = np.zeros((n, n))
    if spec.space == "H2":
        for j in range(n):
            for k in range(j + 1):
                out[j, k] = b[j - k] / (math.factorial(j - k) * math.factorial(k))
    else:
        nu = spec.nu
        g0 = float(specfun.gamma_fn(nu + 1.0))
        for j in range(n):
            for k in range(j + 1):
                out[j, k] = ((-1.0) ** (j + k) * g0 * b[j - k]
                             / (math.factorial(k) * float(specfun.gamma_fn(nu + k + 1.0))
                                * math.factorial(j - k)))
    return out


def _lagrange_rows(x):
    """Rows of Lambda_j(y) = prod_{l != j} (x_l - y)/(x_l - x_j), ascending."""
    x = np.asarray(x, dtype=float)
    n = x.size
    rows = np.zeros((n, n))
    for j in range(n):
        others = np.delete(x, j)
        c = npoly.polyfromroots(others) * (-1.0) ** (n - 1)
        rows[j, :c.size] = c / np.prod(others - x[j])
    return rows


# ---------------------------------------------------------------------------
# integration grid shared by Gram checks, traces, and density normalizations


def _graded_edges(start, stop, w0, grow=1.3, cap_mult=8.0):
    """Panel edges from start toward stop, widths growing geometrically."""
    out = []
    w = w0
    sign = 1.0 if stop > start else -1.0
    pos = start
    while (stop - pos) * sign > 0.25 * w:
        pos = pos + sign * w
        if (stop - pos) * sign <= 0.0:
            break
        out.append(pos)
        w = min(w * grow, cap_mult * w0)
    return out


def _grid_edges(lo, hi, kinks, hard_lo, lo0, hi0, depth=68, panels=56):
    """Panel edges: uniform width over the main window [lo0, hi0], graded
    wider panels over the padded tails, splits at kinks, geometric stacks
    shrinking toward each hard edge."""
    max_w = (hi0 - lo0) / panels
    core_lo, core_hi = max(lo, lo0), min(hi, hi0)
    base = {core_lo, core_hi}
    inner = sorted(k for k in kinks if lo < k < hi)
    base.update(k for k in inner if core_lo < k < core_hi)
    base = sorted(base)
    fine = []
    for a, b in zip(base[:-1], base[1:]):
        m = max(1, int(math.ceil((b - a) / max_w)))
        fine.extend(np.linspace(a, b, m + 1)[:-1])
    fine.append(core_hi)
    if hi > core_hi:
        fine.extend(_graded_edges(core_hi, hi, max_w))
        fine.append(hi)
    if lo < core_lo:
        fine.extend(_graded_edges(core_lo, lo, max_w))
        fine.append(lo)
    fine.extend(k for k in inner if not core_lo < k < core_hi)
    fine = sorted(set(fine))
    stack = []
    hard = list(inner)
    if hard_lo:
        hard.append(lo)
    for kpt in sorted(set(hard)):
        later = [e for e in fine if e > kpt + 1e-300]
        if later:
            w0 = min(later) - kpt
            stack.extend(kpt + w0 * 0.5 ** t for t in range(1, depth))
        earlier = [e for e in fine if e < kpt - 1e-300]
        if earlier and kpt > lo:
            w0 = kpt - max(earlier)
            stack.extend(kpt - w0 * 0.5 ** t for t in range(1, depth))
    return np.unique(np.asarray(fine + stack))


def _noise_backed(spec):
    """Density values carry an absolute quadrature noise floor (so padding
    far into the tail integrates noise against large polynomials)."""
    return spec.family == "polya_product" and spec.gamma > 0.0


def _pair_grid(cfg, coeff_rows, qfns):
    """Panel quadrature covering the support of every p_j q_j product.

    Panels split at weight kinks (shifted copies included), refine
    geometrically toward hard edges so fractional powers integrate to
    full accuracy, and pad the soft tails by probing the actual Gram
    integrand until its largest entry drops twelve decades below the
    in-window maximum.
    """
    spec = cfg.weight
    lo, hi = weights.support_window(spec)
    kinks = set(weights.support_breakpoints(spec))
    hard_lo = weights.support_lower(spec) > -math.inf
    noise = _noise_backed(spec)
    generic_pad = False
    if cfg.shift.mode == "fixed":
        x = cfg.shift.x
        if spec.space == "H2":
            kinks = {k + xv for k in kinks for xv in x}
            lo, hi = lo + min(x), hi + max(x)
        else:
            hi = (math.sqrt(hi) + math.sqrt(max(x))) ** 2
            kinks = {0.0}
    elif cfg.shift.mode == "ensemble":
        sspec = cfg.shift.second.weight
        red = weights.convolved_spec(spec, sspec)
        if red is not None:
            lo, hi = weights.support_window(red[0])
            kinks = set(weights.support_breakpoints(red[0]))
            hard_lo = weights.support_lower(red[0]) > -math.inf
            noise = _noise_backed(red[0])
        else:
            slo, shi = weights.support_window(sspec)
            generic_pad = True
            if spec.space == "H2":
                skinks = weights.support_breakpoints(sspec)
                kinks = {k + s for k in kinks for s in skinks}
                lo, hi = lo + slo, hi + shi
                hard_lo = hard_lo and weights.support_lower(sspec) > -math.inf
            else:
                hi = (math.sqrt(hi) + math.sqrt(shi)) ** 2
                kinks = {0.0}
    lo0, hi0 = lo, hi
    width = hi0 - lo0

    def integrand_max(ys):
        pv = np.abs(npoly.polyval(ys, coeff_rows.T))
        qv = np.vstack([np.abs(np.asarray(qf(ys), dtype=float)) for qf in qfns])
        return np.max(pv * qv, axis=0)

    def tail_pad(edge, sgn):
        # threshold is relative to the in-window peak; shifted bases have
        # integrals far below that peak, so go the full fifteen decades
        step = width / 24.0
        cand = edge + sgn * step * np.arange(1.0, 193.0)
        above = integrand_max(cand) > mref * 1e-15
        idx = np.nonzero(above)[0]
        return step * (idx[-1] + 2.0) if idx.size else step

    if noise:
        scale = max([math.sqrt(2.0 * spec.gamma + 1e-300)]
                    + [abs(d) for d in getattr(spec, "deltas", ())])
        pad_up = pad_dn = 3.0 * scale
    elif generic_pad:
        pad_up = pad_dn = 0.35 * (cfg.n + 2) * width
    else:
        core = np.linspace(lo0 + width / 200.0, hi0, 161)
        mref = float(np.max(integrand_max(core)))
        pad_up = tail_pad(hi0, 1.0)
        pad_dn = tail_pad(lo0, -1.0) if not hard_lo else 0.0
    hi = hi0 + pad_up
    if not hard_lo:
        lo = lo0 - pad_dn
    edges = _grid_edges(lo, hi, kinks, hard_lo, lo0, hi0)
    return quadrature.composite_rule(edges, 24)


# ---------------------------------------------------------------------------
# bi-orthonormal pairs


@dataclasses.dataclass(frozen=True, eq=False)
class BiorthPair:
    polys: tuple
    weight_fns: tuple
    gram_tolerance: float = GRAM_TOLERANCE
    gram: np.ndarray = None
    scales: np.ndarray = None
    basis: np.ndarray = None
    grid: tuple = None


def _coeff_matrix(pair):
    n = len(pair.polys)
    out = np.zeros((n, n))
    for j, p in enumerate(pair.polys):
        c = np.asarray(p.coeffs, dtype=float)
        out[j, :c.size] = c
    return out


def _gram_matrix(coeff_rows, qfns, grid):
    nodes, wts = grid
    vander = npoly.polyvander(nodes, coeff_rows.shape[1] - 1)
    p_vals = vander @ coeff_rows.T
    q_vals = np.column_stack([qf(nodes) for qf in qfns])
    return (p_vals * wts[:, None]).T @ q_vals


def _finish_pair(cfg, coeff_rows, qfns, basis, rescale,
                 gram_tolerance=GRAM_TOLERANCE):
    grid = _pair_grid(cfg, coeff_rows, qfns)
    gram = _gram_matrix(coeff_rows, qfns, grid)
    n = cfg.n
    scales = np.ones(n)
    if rescale:
        diag = np.diag(gram).copy()
        if np.any(diag <= 0.0) or not np.all(np.isfinite(diag)):
            raise AccuracyError("bi-orthonormal scale normalization failed",
                                details=gram)
        scales = diag
        coeff_rows = coeff_rows / scales[:, None]
        gram = gram / scales[:, None]
    deviation = float(np.max(np.abs(gram - np.eye(n))))
    if deviation > gram_tolerance:
        raise AccuracyError("bi-orthonormality check failed at %.3e" % deviation,
                            details=gram)
    polys = []
    for row in coeff_rows:
        keep = np.trim_zeros(row, "b")
        polys.append(PolynomialCoeffs(keep if keep.size else row[:1]))
    return BiorthPair(polys=tuple(polys), weight_fns=tuple(qfns),
                      gram_tolerance=gram_tolerance, gram=gram,
                      scales=scales, basis=basis, grid=grid)


def _one_point_fn(spec, j, const=1.0):
    def qf(y):
        out = weights.one_point_weight(spec, j, y)
        return const * out if const != 1.0 else out
    return qf


def _shifted_weight_fn(spec, xv):
    if spec.space == "H2":
        def qf(y):
            return weights.eval_weight(spec, np.asarray(y, dtype=float) - xv)
    else:
        # Bessel route: same values as radial_shift, much cheaper on grids
        def qf(y):
            return weights.radial_shift_bessel(spec, y, xv)
    return qf


def _convolved_weight_fn(spec, second_spec, j):
    """q_j(y) = (omega * q~_j)(y) by direct quadrature (no closed reduction)."""
    sbreaks = weights.support_breakpoints(second_spec)
    wbreaks = weights.support_breakpoints(spec)

    if spec.space == "H2" and not wbreaks:
        # smooth omega: one shared rule in t serves every y as a matrix product
        slo, shi = weights.support_window(second_spec)
        pad = 1.5 * (shi - slo)
        hard = weights.support_lower(second_spec) > -math.inf
        lo = slo if hard else slo - pad
        edges = _grid_edges(lo, shi + pad, set(sbreaks), hard, slo, shi)
        tn, tw = quadrature.composite_rule(edges, 24)
        qt = weights.one_point_weight(second_spec, j, tn) * tw

        def qf(y):
            arr = np.atleast_1d(np.asarray(y, dtype=float))
            out = np.empty(arr.shape)
            for blk in range(0, arr.size, 512):
                sl = slice(blk, blk + 512)
                out[sl] = weights.eval_weight(spec, arr[sl, None] - tn[None, :]) @ qt
            return out if np.ndim(y) else float(out[0])
        return qf

    def qf(y):
        arr = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty(arr.shape)
        for i, yv in enumerate(arr):
            if spec.space == "H2":
                def f(t):
                    return (weights.eval_weight(spec, yv - t)
                            * weights.one_point_weight(second_spec, j, t))
                bks = sorted(set(sbreaks) | {yv - b for b in wbreaks})
                out[i] = quadrature.real_line_integrate(f, breakpoints=bks,
                                                        n_nodes=64)
            else:
                if yv <= 0.0:
                    out[i] = 0.0
                    continue

                def f(t):
                    t = np.asarray(t, dtype=float)
                    rs = weights.radial_shift_bessel(spec, t, yv)
                    ratio = (yv / t) ** spec.nu
                    return rs * ratio * weights.one_point_weight(second_spec, j, t)
                out[i] = quadrature.half_line_integrate(f, n_nodes=48)
        return out if np.ndim(y) else float(out[0])
    return qf


def biorth_unshifted(cfg):
    """Exact pair for shift mode none: p_j from the reciprocal series,
    q_j = one_point_weight(j).  No rescaling; the formulas are normalized."""
    if cfg.shift.mode != "none":
        raise UsageError("biorth_unshifted needs shift mode none")
    spec, n = cfg.weight, cfg.n
    coeff_rows = _poly_matrix_unshifted(spec, n)
    qfns = [_one_point_fn(spec, j) for j in range(n)]
    return _finish_pair(cfg, coeff_rows, qfns, basis=np.eye(n), rescale=False)


def biorth_fixed(cfg):
    """Pair for a fixed additive (H2) or radial (M) shift with eigenvalues x.

    p_j applies the reciprocal-series map T to the Lagrange polynomial
    through the shift eigenvalues; q_j is the weight translated to x_j.
    The scale of each p_j is set by normalizing the Gram diagonal.
    """
    if cfg.shift.mode != "fixed":
        raise UsageError("biorth_fixed needs shift mode fixed")
    spec, n = cfg.weight, cfg.n
    lam = _lagrange_rows(cfg.shift.x)
    coeff_rows = _tmap_apply(spec, lam, n)
    qfns = [_shifted_weight_fn(spec, xv) for xv in cfg.shift.x]
    return _finish_pair(cfg, coeff_rows, qfns, basis=lam, rescale=True)


def biorth_polyshift(cfg):
    """Pair for a second-ensemble shift: p_j = T[p~_j], q_j = omega * q~_j.

    The convolution drops to a closed catalog weight whenever
    weights.convolved_spec knows the reduction; otherwise each q_j is a
    direct numerical convolution.
    """
    if cfg.shift.mode != "ensemble":
        raise UsageError("biorth_polyshift needs shift mode ensemble")
    spec, n = cfg.weight, cfg.n
    second = cfg.shift.second
    base = _poly_matrix_unshifted(second.weight, n)
    coeff_rows = _tmap_apply(spec, base, n)
    red = weights.convolved_spec(spec, second.weight)
    if red is not None:
        conv_spec, const = red
        conv_spec = weights.with_n(conv_spec, n)
        qfns = [_one_point_fn(conv_spec, j, const) for j in range(n)]
    else:
        qfns = [_convolved_weight_fn(spec, second.weight, j) for j in range(n)]
    return _finish_pair(cfg, coeff_rows, qfns, basis=base, rescale=True)


def biorth_pair(cfg):
    if cfg.shift.mode == "none":
        return biorth_unshifted(cfg)
    if cfg.shift.mode == "fixed":
        return biorth_fixed(cfg)
    return biorth_polyshift(cfg)


# ---------------------------------------------------------------------------
# kernels, series route


@dataclasses.dataclass(frozen=True, eq=False)
class KernelEvaluator:
    config: EnsembleConfig
    pair: BiorthPair
    strategy: str = "series"


def kernel_evaluator(cfg, strategy="series"):
    if strategy not in ("series", "contour"):
        raise UsageError("kernel strategy must be series or contour")
    return KernelEvaluator(config=cfg, pair=biorth_pair(cfg), strategy=strategy)


def kernel_grid(kev, yprime, y):
    """Series-route kernel matrix K[a, b] = K_n(yprime[a], y[b])."""
    yprime = np.atleast_1d(np.asarray(yprime, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    coeff_rows = _coeff_matrix(kev.pair)
    p_vals = npoly.polyvander(yprime, coeff_rows.shape[1] - 1) @ coeff_rows.T
    q_vals = np.column_stack([qf(y) for qf in kev.pair.weight_fns])
    return p_vals @ q_vals.T


def kernel_eval(kev, yprime, y):
    return float(kernel_grid(kev, [yprime], [y])[0, 0])


def evaluate_kernel(kev, yprime, y):
    """Dispatch on the evaluator's declared strategy."""
    if kev.strategy == "contour":
        return kernel_contour_eval(kev, yprime, y)
    return kernel_eval(kev, yprime, y)


# ---------------------------------------------------------------------------
# kernels, contour route


def _contour_poly_vals(spec, basis_rows, prefactors, yprime):
    """Values of the mapped polynomials at yprime through circle quadrature.

    Row j integrates phi(y', z) / (z * transform(z)) against the inverse
    monomial weights of basis row j; prefactors carry the per-j scale of
    the route being mirrored.
    """
    model = weights.transform_model(spec)
    contour = quadrature.default_circle(model.holomorphy_radius)
    n = basis_rows.shape[0]
    order = basis_rows.shape[1]
    k_idx = np.arange(order, dtype=float)
    if spec.space == "H2":
        mom = specfun.gamma_fn(k_idx + 1.0)
    else:
        mom = ((-1.0) ** np.arange(order) * specfun.gamma_fn(k_idx + 1.0)
               * specfun.gamma_fn(k_idx + spec.nu + 1.0))
    out = np.empty((n, len(yprime)))
    for i, yv in enumerate(yprime):
        for j in range(n):
            lam = basis_rows[j] * mom

            def g(z):
                if spec.space == "H2":
                    phi = np.exp(1j * yv * z)
                    base = 1.0 / (1j * z)
                else:
                    phi = specfun.bessel_jf(spec.nu, yv * z)
                    base = 1.0 / z
                inner = np.zeros_like(z)
                for k in range(order - 1, -1, -1):
                    inner = inner * base + lam[k]
                return phi * inner / (z * model.evaluate(z))
            # the oscillation amplitude exp(|y'| r) leaves a roundoff floor;
            # 1e-9 is far below the route-agreement target, and shrinking
            # the circle tames the floor when the first radius is too wide
            val = None
            for shrink in (1.0, 0.5, 0.25):
                ring = quadrature.CircleContour(contour.radius * shrink,
                                                contour.node_count)
                try:
                    val = quadrature.contour_integrate(ring, g, tol=1e-9)
                    break
                except AccuracyError:
                    if shrink == 0.25:
                        raise
            out[j, i] = prefactors[j] * val.real
    return out


def _decay_cutoff(fabs, jpow, start=0.25, factor=1.3, cap=1e5):
    """Point beyond which z^jpow * fabs(z) stays under 1e-15 of its peak.

    Walks a geometric ladder tracking the running maximum, so transforms
    whose peak sits far from the origin are still cut in the right place.
    """
    z = start
    peak = 1e-300
    while z < cap:
        v = float(z ** jpow * fabs(np.asarray([z]))[0])
        peak = max(peak, v)
        if v < 1e-15 * peak:
            return z
        z *= factor
    return cap


def _transform_q_vals_h2(spec, n, ys):
    """q_j(y) via the inverse Fourier side, vectorized over the y grid."""
    model = weights.transform_model(spec)
    jmax = n - 1
    positive = weights.support_lower(spec) >= 0.0 and spec.family != "gaussian"
    out = np.empty((n, len(ys)))
    if not positive:
        def fabs(z):
            return np.abs(model.evaluate(z))
        zmax = _decay_cutoff(fabs, jmax)
        for i, yv in enumerate(ys):
            width = min(zmax / 10.0, 5.0 / max(1.0, abs(yv)))
            edges = np.linspace(0.0, zmax, max(10, int(math.ceil(zmax / width))) + 1)
            nodes, wts = quadrature.composite_rule(edges, 32)
            tv = model.evaluate(nodes) * np.exp(-1j * yv * nodes) * wts
            for j in range(n):
                s = np.sum(nodes ** j * tv)
                out[j, i] = ((1j) ** j * s).real / math.pi
        return out
    # positive-support weights decay algebraically in Fourier space; tilt the
    # ray into the lower half plane so exp(-i y z) damps the tail (y > 0)
    theta = 0.25 * math.pi
    phase = np.exp(-1j * theta)
    if float(np.min(ys)) <= 0.0:
        raise UsageError("contour route needs y inside the positive support")
    for i, yv in enumerate(ys):
        damp = yv * math.sin(theta)

        def fabs(u):
            return np.abs(model.evaluate(phase * u)) * np.exp(-damp * u)
        umax = _decay_cutoff(fabs, jmax)
        width = min(1.0, 5.0 / max(1.0, yv * math.cos(theta)), umax / 12.0)
        edges = np.linspace(0.0, umax, max(12, int(math.ceil(umax / width))) + 1)
        nodes, wts = quadrature.composite_rule(edges, 32)
        zs = phase * nodes
        tv = model.evaluate(zs) * np.exp(-1j * yv * zs) * wts
        for j in range(n):
            s = phase ** (j + 1) * np.sum(nodes ** j * tv)
            out[j, i] = ((1j) ** j * s).real / math.pi
    return out


def _transform_q_vals_m(spec, n, ys):
    """q_j(y) via the inverse Hankel side."""
    model = weights.transform_model(spec)
    nu = spec.nu
    jmax = n - 1

    def fabs(z):
        return np.abs(model.evaluate(z))
    zmax = _decay_cutoff(fabs, jmax)
    g0 = float(specfun.gamma_fn(nu + 1.0))
    out = np.empty((n, len(ys)))
    for i, yv in enumerate(ys):
        if yv <= 0.0:
            raise UsageError("contour route needs y inside the positive support")
        edges = [0.0]
        while edges[-1] < zmax:
            period = 2.0 * math.pi * math.sqrt(max(edges[-1], 1e-3) / yv)
            w = max(zmax / 400.0, min(zmax / 20.0, period / 3.0))
            edges.append(min(zmax, edges[-1] + w))
        nodes, wts = quadrature.composite_rule(np.asarray(edges), 32)
        tv = model.evaluate(nodes).real * specfun.bessel_jg(nu, yv * nodes) * wts
        for j in range(n):
            out[j, i] = (-1.0) ** j * float(np.sum(nodes ** j * tv)) / g0
    return out


def kernel_contour_grid(kev, yprime, y):
    """Contour-route kernel matrix, independent of the series coefficients."""
    cfg = kev.config
    spec, n = cfg.weight, cfg.n
    yprime = np.atleast_1d(np.asarray(yprime, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    pair = kev.pair
    if cfg.shift.mode == "none":
        if spec.space == "H2":
            pref = 1.0 / specfun.gamma_fn(np.arange(n) + 1.0)
            q_vals = _transform_q_vals_h2(spec, n, y)
        else:
            pref = (specfun.gamma_fn(spec.nu + 1.0)
                    / (specfun.gamma_fn(np.arange(n) + 1.0)
                       * specfun.gamma_fn(np.arange(n) + spec.nu + 1.0)))
            q_vals = _transform_q_vals_m(spec, n, y)
        p_vals = _contour_poly_vals(spec, np.eye(n), pref, yprime)
        return p_vals.T @ q_vals
    p_vals = _contour_poly_vals(spec, pair.basis, 1.0 / pair.scales, yprime)
    q_vals = np.vstack([np.atleast_1d(qf(y)) for qf in pair.weight_fns])
    return p_vals.T @ q_vals


def kernel_contour_eval(kev, yprime, y):
    return float(kernel_contour_grid(kev, [yprime], [y])[0, 0])


# ---------------------------------------------------------------------------
# correlation functions and joint density


def correlation_rk(kev, points):
    """k-point correlation R_k = det[K(x_b, x_c)] at the given points."""
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    if pts.size > kev.config.n:
        raise UsageError("correlation order k cannot exceed n")
    mat = kernel_grid(kev, pts, pts)
    val = float(np.linalg.det(mat))
    if val < -1e-10:
        raise AccuracyError("correlation function went negative: %.3e" % val,
                            details=mat)
    return val


def _moment_diagonal(spec, n):
    """Exact moments int y^j q_j(y) dy, the triangular-diagonal of the
    moment matrix that Andreief reduction turns into the normalization."""
    j = np.arange(n, dtype=float)
    t0 = weights.transform_model(spec).value_at_zero
    fact = specfun.gamma_fn(j + 1.0)
    if spec.space == "H2":
        return t0 * fact
    return t0 * fact * specfun.gamma_fn(j + spec.nu + 1.0) / specfun.gamma_fn(spec.nu + 1.0)


def _jpdf_normalization(cfg):
    spec, n = cfg.weight, cfg.n
    n_fact = float(specfun.gamma_fn(n + 1.0))
    t0 = weights.transform_model(spec).value_at_zero
    if cfg.shift.mode == "none":
        return n_fact * float(np.prod(_moment_diagonal(spec, n)))
    if cfg.shift.mode == "fixed":
        return n_fact * t0 ** n * vandermonde(cfg.shift.x)
    second = cfg.shift.second.weight
    return n_fact * t0 ** n * float(np.prod(_moment_diagonal(second, n)))


def _jpdf_batch(cfg, pts):
    """Joint density at a batch of eigenvalue vectors, shape (m, n)."""
    spec, n = cfg.weight, cfg.n
    pts = np.asarray(pts, dtype=float)
    m = pts.shape[0]
    vals = np.zeros(m)
    # coincident coordinates are the degenerate zero limit; M-space points
    # off the half line are zero too (and would confuse the Bessel routes)
    ok = np.array([np.unique(row).size == n for row in pts])
    if spec.space == "M":
        ok &= np.all(pts > 0.0, axis=1)
    if not np.any(ok):
        return vals
    sub = pts[ok]
    msub = sub.shape[0]
    delta = np.ones(msub)
    for b in range(n):
        for c in range(b + 1, n):
            delta *= sub[:, c] - sub[:, b]
    mats = np.empty((msub, n, n))
    if cfg.shift.mode == "fixed" and spec.space == "H2":
        # flatten: the product-form evaluators expect 1-D arguments
        flat = sub.reshape(-1)
        for b, xv in enumerate(cfg.shift.x):
            mats[:, :, b] = np.asarray(weights.eval_weight(spec, flat - xv)).reshape(msub, n)
    elif cfg.shift.mode == "fixed":
        flat = sub.reshape(-1)
        for b, xv in enumerate(cfg.shift.x):
            mats[:, :, b] = np.asarray(weights.radial_shift(spec, flat, xv)).reshape(msub, n)
    else:
        if cfg.shift.mode == "none":
            qfns = [_one_point_fn(spec, j) for j in range(n)]
        else:
            red = weights.convolved_spec(spec, cfg.shift.second.weight)
            if red is not None:
                conv_spec = weights.with_n(red[0], n)
                qfns = [_one_point_fn(conv_spec, j, red[1]) for j in range(n)]
            else:
                qfns = [_convolved_weight_fn(spec, cfg.shift.second.weight, j)
                        for j in range(n)]
        flat = sub.reshape(-1)
        for b, qf in enumerate(qfns):
            mats[:, :, b] = np.asarray(qf(flat)).reshape(msub, n)
    vals[ok] = delta * np.linalg.det(mats) / _jpdf_normalization(cfg)
    bad = float(np.min(vals))
    if bad < -1e-10:
        raise AccuracyError("joint density went negative: %.3e "
                            "(weight likely violates admissibility)" % bad)
    np.clip(vals, 0.0, None, out=vals)
    return vals


def jpdf_eval(cfg, x):
    """Normalized joint eigenvalue density at one point set x (length n)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (cfg.n,):
        raise UsageError("jpdf_eval needs exactly n coordinates")
    return float(_jpdf_batch(cfg, x[None, :])[0])


# ---------------------------------------------------------------------------
# Andreief identity checker (test utility)


def _andreief_rule(support, n):
    points = {1: 1280, 2: 320, 3: 126, 4: 56}[n]
    per_panel = 8 if n >= 3 else 16
    panels = max(2, points // per_panel)
    if support == "real":
        edges = np.linspace(-10.0, 10.0, panels + 1)
    elif support == "positive":
        lin = np.linspace(1.0, 24.0, max(2, panels - 8) + 1)
        geo = np.geomspace(1e-8, 1.0, 9)[:-1]
        edges = np.concatenate([geo, lin])
        edges = np.concatenate([[0.0], edges])
    else:
        raise UsageError("support tag must be real or positive")
    return quadrature.composite_rule(np.unique(edges), per_panel)


def andreief_check(phis, psis, support="real"):
    """|(1/n!) int det[phi_b(x_c)] det[psi_b(x_c)] d^n x - det[int phi_b psi_c]|.

    Brute-force tensor quadrature against the moment-matrix determinant;
    n up to 4.
    """
    n = len(phis)
    if len(psis) != n:
        raise UsageError("need equally many phi and psi functions")
    if not 1 <= n <= 4:
        raise UsageError("andreief_check covers 1 <= n <= 4")
    nodes, wts = _andreief_rule(support, n)
    k = nodes.size
    f_vals = np.vstack([np.asarray(p(nodes), dtype=float) for p in phis])
    g_vals = np.vstack([np.asarray(p(nodes), dtype=float) for p in psis])
    rhs = float(np.linalg.det((f_vals * wts) @ g_vals.T))
    total = 0.0
    chunk = 200000
    count = k ** n
    for startx in range(0, count, chunk):
        idx = np.arange(startx, min(startx + chunk, count))
        multi = np.stack(np.unravel_index(idx, (k,) * n), axis=1)
        fm = f_vals[:, multi].transpose(1, 0, 2)
        gm = g_vals[:, multi].transpose(1, 0, 2)
        wprod = np.prod(wts[multi], axis=1)
        total += float(np.sum(np.linalg.det(fm) * np.linalg.det(gm) * wprod))
    lhs = total / float(specfun.gamma_fn(n + 1.0))
    return abs(lhs - rhs)
