import math

import numpy as np
import pytest
import sympy
from numpy.polynomial import hermite_e
from scipy import integrate as si

from conftest import POLYA_M_DELTAS, catalog, weight_mass
from polya_kernels import quadrature as qd
from polya_kernels import specfun as sf
from polya_kernels import weights as wt
from polya_kernels.errors import DomainError, UsageError

SQRT_2PI = 2.5066282746310002


# --- factories and validation ---

def test_nu_validation_message():
    for bad in (0.3, -1.0, 1.7, -0.5 + 1e-9):
        with pytest.raises(DomainError, match="nu must be -0.5, 0.5, or a nonnegative integer"):
            wt.laguerre_m(bad)
    with pytest.raises(DomainError):
        wt.polya_product_m(2.3, (0.1, 0.2))


def test_factory_rejects_bad_parameters():
    with pytest.raises(DomainError):
        wt.gaussian(0.0)
    with pytest.raises(DomainError):
        wt.gaussian(-1.0)
    with pytest.raises(DomainError):
        wt.laguerre_h2(-1.0)
    with pytest.raises(DomainError):
        wt.laguerre_m(1.0, scale=0.0)
    with pytest.raises(DomainError):
        wt.polya_product(gamma=-0.1, deltas=(0.5, 0.5))
    with pytest.raises(DomainError):
        wt.polya_product(0.0, (0.5, -0.2), support="positive")
    with pytest.raises(DomainError):
        wt.polya_product(0.1, (0.5, 0.5), support="positive")
    with pytest.raises(DomainError):
        wt.polya_product(0.0, (0.0, 0.0), support="positive")
    with pytest.raises(DomainError):
        wt.polya_product(0.2, (0.1,), support="half")
    with pytest.raises(DomainError):
        wt.polya_product_m(1.0, (-0.1, 0.2))
    with pytest.raises(DomainError):
        wt.polya_product_m(1.0, (0.1, 0.2), delta_shift=-0.5)


def test_with_n_admissibility():
    spec = wt.laguerre_h2(2.0)
    assert wt.with_n(spec, 3).n == 3
    with pytest.raises(DomainError):
        wt.with_n(spec, 4)
    real3 = wt.polya_product(0.0, (0.3, 0.2, 0.1), "real")
    assert wt.with_n(real3, 2).n == 2
    with pytest.raises(DomainError):
        wt.with_n(real3, 3)
    # a gaussian factor lifts the count condition
    assert wt.with_n(wt.polya_product(0.5, (0.3,), "real"), 6).n == 6
    # positive support carries no count condition
    assert wt.with_n(wt.polya_product(0.0, (0.4, 0.2), "positive"), 5).n == 5
    m3 = wt.polya_product_m(0.0, (0.3, 0.2, 0.1))
    assert wt.with_n(m3, 2).n == 2
    with pytest.raises(DomainError):
        wt.with_n(m3, 3)
    assert wt.with_n(wt.polya_product_m(0.0, (0.3,), delta_shift=0.2), 6).n == 6
    with pytest.raises(DomainError):
        wt.with_n(wt.gaussian(1.0), 0)


# --- weight evaluation ---

def test_eval_weight_closed_values():
    assert wt.eval_weight(wt.gaussian(1.0), 0.0) == 1.0
    assert wt.eval_weight(wt.laguerre_m(2.0, 1.0), 1.0) == pytest.approx(
        0.36787944117144233, rel=1e-15)
    assert wt.eval_weight(wt.laguerre_h2(3.0), 2.0) == pytest.approx(
        8.0 * math.exp(-2.0), rel=1e-15)


def test_eval_weight_support_conventions():
    assert wt.eval_weight(wt.laguerre_h2(3.0), -1.0) == 0.0
    assert wt.eval_weight(wt.laguerre_m(2.0, 1.0), -0.5) == 0.0
    # Theta(0) = 1, and 0^0 = 1 inside the power factor
    assert wt.eval_weight(wt.laguerre_h2(0.0), 0.0) == 1.0
    assert wt.eval_weight(wt.laguerre_m(0.0, 1.0), 0.0) == 1.0
    # nu = -1/2 weights blow up at 0 but stay finite nearby
    assert np.isfinite(wt.eval_weight(wt.laguerre_m(-0.5, 1.0), 1e-12))


def test_eval_weight_nonnegative_on_grids():
    for spec in catalog(n=2):
        lo, hi = wt.support_window(spec)
        x = np.linspace(lo + 1e-9, hi, 401)
        vals = wt.eval_weight(spec, x)
        assert np.all(vals >= 0.0), spec.family


# --- transforms ---

def test_transform_closed_values():
    assert wt.eval_transform(wt.gaussian(1.0), 0.0) == pytest.approx(SQRT_2PI, rel=1e-15)
    assert wt.eval_transform(wt.laguerre_h2(5.0), 0.0) == pytest.approx(120.0, rel=1e-14)
    got = wt.eval_transform(wt.laguerre_h2(3.0), 0.4 + 0.2j)
    assert got == pytest.approx(0.65625 + 2.25j, rel=1e-15)
    assert wt.eval_transform(wt.laguerre_m(2.0, 1.0), 0.7) == pytest.approx(
        2.0 * math.exp(-0.7), rel=1e-14)
    # product families have unit mass by construction
    for spec in catalog(n=2):
        if spec.family.startswith("polya"):
            assert wt.eval_transform(spec, 0.0) == pytest.approx(1.0, rel=1e-14)


def test_transform_value_at_zero_consistency():
    for spec in catalog(n=2):
        model = wt.transform_model(spec)
        assert complex(model.evaluate(0.0)) == pytest.approx(
            model.value_at_zero, rel=1e-14), spec.family


def test_transform_holomorphy_radius():
    assert wt.transform_model(wt.gaussian(2.0)).holomorphy_radius == math.inf
    assert wt.transform_model(wt.laguerre_m(1.0, 0.5)).holomorphy_radius == math.inf
    assert wt.transform_model(wt.laguerre_h2(4.0)).holomorphy_radius == pytest.approx(1.0)
    spec = wt.polya_product(0.3, (0.2, -0.5, 0.1), "real")
    assert wt.transform_model(spec).holomorphy_radius == pytest.approx(2.0)
    spec = wt.polya_product_m(1.0, (0.4, 0.1, 0.0), 0.3)
    assert wt.transform_model(spec).holomorphy_radius == pytest.approx(2.5)


def test_transform_pole_proximity_raises():
    with pytest.raises(DomainError):
        wt.eval_transform(wt.laguerre_h2(2.0), -1.0j)
    spec = wt.polya_product(0.0, (0.5, 0.25, 0.2), "positive")
    with pytest.raises(DomainError):
        wt.eval_transform(spec, -2.0j)
    with pytest.raises(DomainError):
        wt.eval_transform(wt.polya_product_m(1.0, (0.5, 0.4), 0.0), -2.0)


def test_mass_matches_quadrature_all_catalog():
    for spec in catalog(n=2):
        mass = weight_mass(spec)
        expect = wt.transform_model(spec).value_at_zero
        assert mass == pytest.approx(expect, rel=1e-10), spec.family


def test_fourier_transform_matches_quadrature():
    z = 0.25 + 0.15j
    for spec in (wt.gaussian(0.7), wt.laguerre_h2(2.5),
                 wt.polya_product(0.3, (0.2, -0.1, 0.15), "real"),
                 wt.polya_product(0.0, (0.5, 0.3, 0.25), "positive")):
        breaks = tuple(wt.support_breakpoints(spec))
        re = qd.real_line_integrate(
            lambda x: wt.eval_weight(spec, x) * np.cos(x * z.real) * np.exp(-x * z.imag),
            breakpoints=breaks)
        im = qd.real_line_integrate(
            lambda x: wt.eval_weight(spec, x) * np.sin(x * z.real) * np.exp(-x * z.imag),
            breakpoints=breaks)
        got = re + 1j * im
        expect = wt.eval_transform(spec, z)
        assert abs(got - expect) < 1e-10 * abs(expect), spec.family


def test_hankel_transform_matches_quadrature():
    z = 0.6
    for spec in (wt.laguerre_m(0.0, 1.0), wt.laguerre_m(2.0, 0.7),
                 wt.laguerre_m(-0.5, 1.3),
                 wt.polya_product_m(1.0, POLYA_M_DELTAS, 0.1),
                 wt.polya_product_m(-0.5, (0.3, 0.2), 0.5)):
        gam = sf.gamma_fn(spec.nu + 1.0)
        got = qd.half_line_integrate(
            lambda x: wt.eval_weight(spec, x) * gam * sf.bessel_jf(spec.nu, x * z),
            breakpoints=tuple(wt.support_breakpoints(spec)))
        expect = wt.eval_transform(spec, z)
        assert got == pytest.approx(expect, rel=1e-9), spec.family


def test_hankel_at_tiny_argument_recovers_mass():
    for spec in (wt.laguerre_m(1.0, 1.0), wt.polya_product_m(1.0, (0.4, 0.3, 0.2), 0.0)):
        gam = sf.gamma_fn(spec.nu + 1.0)
        got = qd.half_line_integrate(
            lambda x: wt.eval_weight(spec, x) * gam * sf.bessel_jf(spec.nu, x * 1e-6))
        assert got == pytest.approx(wt.transform_model(spec).value_at_zero, rel=1e-5)


# --- reciprocal series ---

def test_reciprocal_series_gaussian_closed_form():
    rec = wt.reciprocal_taylor(wt.gaussian(1.0), 3)
    expect = np.array([1.0, 0.0, -1.0]) / SQRT_2PI
    assert np.max(np.abs(rec.b - expect)) < 1e-15


def test_reciprocal_series_laguerre_h2_b1():
    rec = wt.reciprocal_taylor(wt.laguerre_h2(2.5), 2)
    assert rec.b[0] == pytest.approx(1.0 / sf.gamma_fn(3.5), rel=1e-14)
    assert rec.b[1].real == pytest.approx(-3.5 / sf.gamma_fn(3.5), rel=1e-14)
    assert rec.b[1].real == pytest.approx(-1.0531538892891452, rel=1e-13)


def test_reciprocal_series_b0_and_reality():
    for spec in catalog(n=2):
        rec = wt.reciprocal_taylor(spec, 6)
        assert rec.b[0] == pytest.approx(1.0 / wt.transform_model(spec).value_at_zero,
                                         rel=1e-13), spec.family
        assert np.max(np.abs(rec.b.imag)) == 0.0


def test_reciprocal_series_inverts_transform_near_origin():
    # sum_l coeffs_l z^l must reproduce 1/transform on a small circle
    for spec in catalog(n=2):
        model = wt.transform_model(spec)
        rec = wt.reciprocal_taylor(spec, 12)
        r = 0.05 * min(model.holomorphy_radius, 4.0)
        worst = 0.0
        for ang in np.linspace(0.0, 2.0 * math.pi, 16, endpoint=False):
            z = r * complex(math.cos(ang), math.sin(ang))
            approx = complex(np.polynomial.polynomial.polyval(z, rec.coeffs))
            exact = 1.0 / complex(model.evaluate(z))
            worst = max(worst, abs(approx - exact) / abs(exact))
        assert worst < 1e-12, (spec.family, worst)


# --- one-point weights ---

def test_one_point_gaussian_hermite():
    assert wt.one_point_weight(wt.gaussian(1.0), 2, 0.0) == pytest.approx(-1.0, rel=1e-14)
    spec = wt.gaussian(0.5)
    x = np.linspace(-3.0, 3.0, 41)
    for j in range(6):
        got = wt.one_point_weight(spec, j, x)
        coeffs = np.zeros(j + 1)
        coeffs[j] = 1.0
        u = x / math.sqrt(0.5)
        expect = 0.5 ** (-0.5 * j) * hermite_e.hermeval(u, coeffs) * np.exp(-u * u / 2.0)
        assert np.max(np.abs(got - expect)) < 1e-12 * np.max(np.abs(expect))


def test_one_point_laguerre_m_display():
    # q_j = monic Laguerre times the base weight, scale folded in
    for nu in (0.0, 1.0, -0.5):
        spec = wt.laguerre_m(nu, 1.0)
        x = np.linspace(0.05, 12.0, 60)
        for j in range(4):
            got = wt.one_point_weight(spec, j, x)
            expect = sf.laguerre_monic(j, nu, x) * x ** nu * np.exp(-x)
            assert np.max(np.abs(got - expect)) < 1e-13 * np.max(np.abs(expect))


def test_one_point_h2_symbolic_derivative_oracle():
    xs = sympy.symbols("x", positive=True)
    spec = wt.laguerre_h2(3.0)
    grid = np.linspace(0.2, 9.0, 25)
    for j in range(4):
        deriv = xs ** 3 * sympy.exp(-xs)
        for _ in range(j):
            deriv = -sympy.diff(deriv, xs)
        fn = sympy.lambdify(xs, deriv, "numpy")
        got = wt.one_point_weight(spec, j, grid)
        expect = fn(grid)
        assert np.max(np.abs(got - expect)) < 1e-12 * np.max(np.abs(expect)), j


def test_one_point_m_symbolic_operator_oracle():
    # D f = d/dx [ x^{nu+1} d/dx ( x^{-nu} f ) ] applied to x^2 e^{-x/s}
    xs = sympy.symbols("x", positive=True)
    nu, s = 2, sympy.Rational(7, 10)
    spec = wt.laguerre_m(float(nu), 0.7)
    grid = np.linspace(0.1, 8.0, 30)
    f = xs ** nu * sympy.exp(-xs / s)
    for j in range(3):
        fn = sympy.lambdify(xs, f, "numpy")
        got = wt.one_point_weight(spec, j, grid)
        expect = fn(grid)
        assert np.max(np.abs(got - expect)) < 1e-11 * np.max(np.abs(expect)), j
        f = sympy.diff(xs ** (nu + 1) * sympy.diff(xs ** (-nu) * f, xs), xs)


def test_operator_forms_agree_symbolically():
    xs, nus = sympy.symbols("x nu", positive=True)
    f = (1 + xs + xs ** 3) * sympy.exp(-xs)
    lhs = xs ** nus * sympy.diff(xs ** (1 - nus) * sympy.diff(f, xs), xs)
    rhs = sympy.diff(xs ** (nus + 1) * sympy.diff(xs ** (-nus) * f, xs), xs)
    assert sympy.simplify(lhs - rhs) == 0


def test_polya_h2_distinct_deltas_hypoexponential():
    deltas = (0.5, 0.3, 0.2)
    spec = wt.polya_product(0.0, deltas, "positive")
    x = np.linspace(0.01, 6.0, 40)
    expect = np.zeros_like(x)
    for j, dj in enumerate(deltas):
        amp = 1.0
        for l, dl in enumerate(deltas):
            if l != j:
                amp *= dj / (dj - dl)
        expect += amp * np.exp(-x / dj) / dj
    got = wt.eval_weight(spec, x)
    assert np.max(np.abs(got - expect)) < 1e-12 * np.max(expect)


def test_polya_h2_repeated_deltas_erlang():
    a = 0.4
    spec = wt.polya_product(0.0, (a, a), "positive")
    x = np.linspace(0.01, 5.0, 30)
    expect = x * np.exp(-x / a) / a ** 2
    got = wt.eval_weight(spec, x)
    assert np.max(np.abs(got - expect)) < 1e-13 * np.max(expect)
    # triple group against a quadrature convolution of erlang with exp
    b = 0.25
    spec3 = wt.polya_product(0.0, (a, a, b), "positive")
    for xv in (0.6, 1.4, 3.0):
        conv, err = si.quad(
            lambda t: t * np.exp(-t / a) / a ** 2 * np.exp(-(xv - t) / b) / b,
            0.0, xv, epsabs=1e-13, epsrel=1e-12)
        assert wt.eval_weight(spec3, xv) == pytest.approx(conv, rel=1e-10)


def test_polya_h2_real_support_two_sided():
    spec = wt.polya_product(0.0, (0.4, -0.3, 0.2, -0.1, 0.15), "real")
    # density of a sum of exponentials minus exponentials, centred: positive
    # part convolved with the reflected negative part
    pos = wt.polya_product(0.0, (0.4, 0.2, 0.15), "positive")
    neg = wt.polya_product(0.0, (0.3, 0.1), "positive")
    shift = 0.4 + 0.2 + 0.15 - 0.3 - 0.1
    for xv in (-1.0, -0.2, 0.5, 1.3):
        kink = max(0.0, -(xv + shift))
        conv, err = si.quad(
            lambda t: wt.eval_weight(pos, xv + shift + t) * wt.eval_weight(neg, t),
            0.0, 40.0, epsabs=1e-13, limit=200, points=[kink])
        assert wt.eval_weight(spec, xv) == pytest.approx(conv, rel=1e-9), xv


def test_polya_h2_q1_matches_derivative():
    for spec in (wt.polya_product(0.0, (0.4, -0.3, 0.2, -0.1, 0.15), "real"),
                 wt.polya_product(0.3, (0.2, -0.1, 0.15, 0.25), "real"),
                 wt.polya_product(0.0, (0.5, 0.3, 0.25, 0.2), "positive")):
        h = 1e-5
        for xv in (0.7, 1.6):
            fd = (wt.eval_weight(spec, xv - h) - wt.eval_weight(spec, xv + h)) / (2 * h)
            got = wt.one_point_weight(spec, 1, xv)
            assert got == pytest.approx(fd, rel=2e-7), (spec.support, xv)


def test_polya_m_one_point_inverse_hankel_oracle():
    spec = wt.polya_product_m(1.0, POLYA_M_DELTAS, 0.1)
    gam = sf.gamma_fn(spec.nu + 1.0)
    for j in (0, 1, 2):
        for xv in (0.5, 1.5, 3.0):
            val = qd.half_line_integrate(
                lambda z: (-z) ** j * sf.bessel_jg(spec.nu, xv * z)
                * np.real(wt.eval_transform(spec, z + 0.0j)),
                decay="exponential") / gam
            got = wt.one_point_weight(spec, j, xv)
            assert got == pytest.approx(val, rel=1e-8), (j, xv)


def test_polya_m_degenerate_matches_laguerre_m():
    # with no deltas the weight is the fixed-scale hard-edge kernel itself
    nu, shift = 1.0, 0.6
    spec = wt.polya_product_m(nu, (), shift)
    ref = wt.laguerre_m(nu, shift)
    norm = sf.gamma_fn(nu + 1.0) * shift ** (nu + 1.0)
    x = np.linspace(0.05, 6.0, 25)
    for j in range(4):
        got = wt.one_point_weight(spec, j, x)
        expect = wt.one_point_weight(ref, j, x) / norm
        assert np.max(np.abs(got - expect)) < 1e-13 * np.max(np.abs(expect))


def test_one_point_rejects_negative_order():
    with pytest.raises(UsageError):
        wt.one_point_weight(wt.gaussian(1.0), -1, 0.0)


def test_one_point_integrals_all_catalog():
    # every q_j with j >= 1 is a total derivative and integrates to zero
    for spec in catalog(n=4):
        mass = wt.transform_model(spec).value_at_zero
        breaks = tuple(wt.support_breakpoints(spec))
        two_sided = spec.family == "gaussian" or (
            spec.family == "polya_product" and spec.support == "real")
        integrate = qd.real_line_integrate if two_sided else qd.half_line_integrate
        for j in range(4):
            total = integrate(lambda x: wt.one_point_weight(spec, j, x),
                              breakpoints=breaks)
            if j == 0:
                assert total == pytest.approx(mass, rel=1e-9), spec.family
            else:
                assert abs(total) < 1e-9 * mass, (spec.family, j)


# --- support windows ---

def test_support_window_contains_the_mass():
    for spec in catalog(n=2):
        lo, hi = wt.support_window(spec)
        assert lo < hi
        peak = np.max(wt.eval_weight(spec, np.linspace(lo, hi, 301)))
        assert wt.eval_weight(spec, hi) <= 1e-12 * peak
        if spec.family == "gaussian" or (spec.family == "polya_product"
                                         and spec.support == "real"):
            assert wt.eval_weight(spec, lo) <= 1e-12 * peak
        else:
            assert lo == 0.0


# --- radial shifts ---

def test_radial_shift_zero_shift_is_weight():
    for spec in (wt.laguerre_m(1.0, 1.0), wt.laguerre_m(-0.5, 1.3),
                 wt.polya_product_m(1.0, POLYA_M_DELTAS, 0.1)):
        y = np.linspace(0.1, 7.0, 23)
        got = wt.radial_shift(spec, y, 0.0)
        expect = wt.eval_weight(spec, y)
        assert np.max(np.abs(got - expect)) <= 1e-13 * np.max(expect)


def test_radial_shift_laguerre_bessel_value():
    # Gamma(2) sqrt(y/x) I_1(2 sqrt(xy)) e^{-(x+y)} at y=2, x=0.5
    got = wt.radial_shift(wt.laguerre_m(1.0, 1.0), 2.0, 0.5)
    assert got == pytest.approx(0.26113484804805573, rel=1e-12)
    alt = wt.radial_shift_bessel(wt.laguerre_m(1.0, 1.0), 2.0, 0.5)
    assert alt == pytest.approx(0.26113484804805573, rel=1e-12)


def test_radial_shift_reflection_value():
    got = wt.radial_shift(wt.laguerre_m(-0.5, 1.0), 1.2, 0.4)
    assert got == pytest.approx(0.3914232842667784, rel=1e-13)


def test_radial_shift_route_agreement():
    y = np.linspace(0.2, 18.0, 31)
    for spec in (wt.laguerre_m(1.0, 1.0), wt.laguerre_m(2.0, 0.7),
                 wt.polya_product_m(1.0, POLYA_M_DELTAS, 0.1),
                 wt.polya_product_m(-0.5, (0.3, 0.2), 0.5)):
        for x in (0.5, 2.0, 5.0):
            a = wt.radial_shift(spec, y, x)
            b = wt.radial_shift_bessel(spec, y, x)
            assert np.max(np.abs(a - b)) < 1e-10 * np.max(np.abs(b)), (spec.family, x)


def test_radial_shift_hankel_identity():
    # the transform of the shifted weight factorizes through the Bessel kernel
    spec = wt.laguerre_m(2.0, 0.7)
    gam = sf.gamma_fn(spec.nu + 1.0)
    z, x = 0.6, 1.1
    got = qd.half_line_integrate(
        lambda y: wt.radial_shift(spec, y, x) * gam * sf.bessel_jf(spec.nu, y * z))
    expect = wt.eval_transform(spec, z) * gam * sf.bessel_jf(spec.nu, x * z)
    assert got == pytest.approx(float(np.real(expect)), rel=1e-9)


def test_radial_shift_rejects_bad_usage():
    with pytest.raises(UsageError):
        wt.radial_shift(wt.laguerre_m(1.0, 1.0), 1.0, -0.5)
    with pytest.raises(UsageError):
        wt.radial_shift(wt.gaussian(1.0), 1.0, 0.5)
    with pytest.raises(UsageError):
        wt.radial_profile(wt.gaussian(1.0), 1.0)


# --- convolutions ---

def test_convolve_gaussian_closed_form():
    w1, w2 = wt.gaussian(1.0), wt.gaussian(2.0)
    for xv, expect in ((0.0, 2.046653415892977),
                       (0.9, 1.7881936551763623),
                       (-1.7, 1.2643261752612349)):
        assert wt.convolve(w1, w2, xv) == pytest.approx(expect, rel=1e-9)


def test_transform_multiplicativity_through_reductions():
    pairs = [
        (wt.gaussian(1.0), wt.gaussian(2.0)),
        (wt.laguerre_h2(1.5), wt.laguerre_h2(2.0)),
        (wt.laguerre_m(1.0, 0.8), wt.laguerre_m(1.0, 1.3)),
        (wt.gaussian(0.7), wt.polya_product(0.2, (0.3, -0.2), "real")),
        (wt.laguerre_m(2.0, 0.6), wt.polya_product_m(2.0, (0.3, 0.25), 0.1)),
        (wt.polya_product_m(1.0, (0.4, 0.3), 0.1), wt.polya_product_m(1.0, (0.2, 0.15), 0.0)),
    ]
    zs = (0.3, 0.11 + 0.07j, -0.2 + 0.05j, 0.02, 0.4 + 0.1j)
    for w1, w2 in pairs:
        spec, c = wt.convolved_spec(w1, w2)
        for z in zs:
            lhs = wt.eval_transform(w1, z) * wt.eval_transform(w2, z)
            rhs = c * wt.eval_transform(spec, z)
            assert abs(lhs - rhs) <= 1e-8 * abs(lhs), (w1.family, w2.family, z)


def test_laguerre_m_self_convolution_transform():
    # Hankel transform of the self-convolution is Gamma(nu+1)^2 s^{2nu+2} e^{-2sz}
    nu, s = 1.0, 0.9
    spec, c = wt.convolved_spec(wt.laguerre_m(nu, s), wt.laguerre_m(nu, s))
    for z in (0.0, 0.4, 1.1):
        got = c * wt.eval_transform(spec, z)
        expect = sf.gamma_fn(nu + 1.0) ** 2 * s ** (2 * nu + 2) * math.exp(-2 * s * z)
        assert got == pytest.approx(expect, rel=1e-13)


def test_convolve_matches_reduction_pointwise():
    cases = [
        (wt.laguerre_m(1.0, 0.8), wt.laguerre_m(1.0, 1.3), (0.5, 1.7, 4.0)),
        (wt.laguerre_m(-0.5, 1.0), wt.laguerre_m(-0.5, 1.0), (0.4, 2.2)),
        (wt.laguerre_h2(1.5), wt.laguerre_h2(2.0), (0.8, 3.1)),
        (wt.laguerre_m(2.0, 0.6), wt.polya_product_m(2.0, (0.3, 0.25), 0.1), (0.8, 2.5)),
        (wt.gaussian(0.7), wt.polya_product(0.2, (0.3, -0.2), "real"), (-0.9, 1.1)),
    ]
    for w1, w2, xs in cases:
        spec, c = wt.convolved_spec(w1, w2)
        for xv in xs:
            got = wt.convolve(w1, w2, xv)
            expect = c * wt.eval_weight(spec, xv)
            assert got == pytest.approx(expect, rel=1e-9), (w1.family, w2.family, xv)


def test_convolve_mixed_h2_against_quad():
    w1, w2 = wt.gaussian(0.5), wt.laguerre_h2(2.0)
    for xv in (0.7, 2.3):
        expect, err = si.quad(lambda t: t * t * np.exp(-t) * np.exp(-(xv - t) ** 2),
                              0.0, 60.0, epsabs=1e-13, limit=200)
        assert wt.convolve(w1, w2, xv) == pytest.approx(expect, rel=1e-9)


def test_convolve_m_edge_behaviour():
    w = wt.laguerre_m(1.0, 1.0)
    assert wt.convolve(w, w, -0.3) == 0.0
    assert wt.convolve(w, w, 0.0) == 0.0
    w_neg = wt.laguerre_m(-0.5, 1.0)
    assert wt.convolve(w_neg, w_neg, 0.0) == math.inf


def test_convolve_rejects_mismatches():
    with pytest.raises(UsageError):
        wt.convolve(wt.gaussian(1.0), wt.laguerre_m(1.0, 1.0), 0.5)
    with pytest.raises(UsageError):
        wt.convolve(wt.laguerre_m(1.0, 1.0), wt.laguerre_m(2.0, 1.0), 0.5)
    assert wt.convolved_spec(wt.gaussian(1.0), wt.laguerre_h2(2.0)) is None
    assert wt.convolved_spec(wt.laguerre_m(1.0, 1.0), wt.laguerre_m(2.0, 1.0)) is None
