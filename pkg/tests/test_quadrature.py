import math

import numpy as np
import pytest

from polya_kernels import quadrature as quad
from polya_kernels.errors import AccuracyError, DomainError

SQRT_2PI = 2.5066282746310002


# --- Gauss rules ---

def test_legendre_examples():
    assert quad.gauss_legendre(8, lambda t: np.ones_like(t)) == pytest.approx(2.0, rel=1e-14)
    assert quad.gauss_legendre(8, lambda t: t**2) == pytest.approx(2.0 / 3.0, rel=1e-14)
    # sqrt(1-t^2) has endpoint singularities in its derivative, so plain
    # Gauss-Legendre converges only algebraically (error ~ N^-3)
    assert quad.gauss_legendre(32, lambda t: np.sqrt(1 - t**2)) == pytest.approx(np.pi / 2, abs=3e-5)
    assert quad.gauss_legendre(512, lambda t: np.sqrt(1 - t**2)) == pytest.approx(np.pi / 2, abs=1e-7)


def test_gegenbauer_examples():
    assert quad.gauss_gegenbauer(8, 0.5, lambda t: np.ones_like(t)) == pytest.approx(2.0, rel=1e-14)
    assert quad.gauss_gegenbauer(16, 1.0, lambda t: np.ones_like(t)) == pytest.approx(np.pi / 2, rel=1e-14)
    assert abs(quad.gauss_gegenbauer(16, 0.5, lambda t: t)) < 1e-15


def test_gegenbauer_rejects_bad_order():
    with pytest.raises(DomainError):
        quad.gauss_gegenbauer_rule(8, -0.5)
    with pytest.raises(DomainError):
        quad.gauss_gegenbauer_rule(8, -0.7)


def test_rule_invariants():
    for make, measure in [
        (lambda n: quad.gauss_legendre_rule(n), 2.0),
        (lambda n: quad.gauss_gegenbauer_rule(n, 1.5),
         math.sqrt(math.pi) * math.gamma(2.0) / math.gamma(2.5)),
        (lambda n: quad.gauss_gegenbauer_rule(n, 0.0), math.pi),
    ]:
        for n in (2, 7, 32):
            rule = make(n)
            assert np.all(rule.weights > 0)
            assert np.all(np.diff(rule.nodes) > 0)
            assert np.sum(rule.weights) == pytest.approx(measure, rel=1e-13)


def test_gauss_exact_on_random_polynomials():
    rng = np.random.default_rng(31)
    for n in (3, 9, 20):
        coeffs = rng.uniform(-1, 1, size=2 * n)  # degree 2n-1
        poly = np.polynomial.Polynomial(coeffs)
        exact = (poly.integ()(1.0) - poly.integ()(-1.0))
        got = quad.gauss_legendre(n, poly)
        assert abs(got - exact) < 1e-13 * np.sum(np.abs(coeffs))

        # Gegenbauer, nu=1: weight sqrt(1-t^2); even moments via the
        # Beta integral, int t^k sqrt(1-t^2) dt = sqrt(pi) G((k+1)/2)/(2 G(k/2+2))
        nu = 1.0
        exact = 0.0
        for k in range(0, 2 * n, 2):
            mom = math.sqrt(math.pi) * math.gamma((k + 1) / 2) / (2 * math.gamma(k / 2 + 2))
            exact += coeffs[k] * mom
        got = quad.gauss_gegenbauer(n, nu, poly)
        assert abs(got - exact) < 1e-13 * np.sum(np.abs(coeffs))


def test_gegenbauer_half_reduces_to_legendre():
    a = quad.gauss_legendre_rule(9)
    b = quad.gauss_gegenbauer_rule(9, 0.5)
    assert np.allclose(a.nodes, b.nodes, atol=1e-14)
    assert np.allclose(a.weights, b.weights, atol=1e-14)


# --- contour integration ---

def test_contour_residues():
    c = quad.CircleContour(0.5)
    assert quad.contour_integrate(c, lambda z: 1.0 / z) == pytest.approx(1.0, abs=1e-13)
    assert abs(quad.contour_integrate(c, lambda z: np.ones_like(z))) < 1e-13
    for m in range(7):
        got = quad.contour_integrate(c, lambda z: np.exp(z) / z ** (m + 1))
        assert got == pytest.approx(1.0 / math.gamma(m + 1), rel=1e-12)


def test_contour_laurent_exactness_at_fixed_node_count():
    c = quad.CircleContour(0.8, 16)
    z, w = quad.contour_nodes(c)
    for k in range(-7, 8):
        got = np.sum(z ** k * w)
        want = 1.0 if k == -1 else 0.0
        assert abs(got - want) < 1e-13


def test_contour_doubling_does_not_hurt():
    errs = []
    for n in (8, 16, 32, 64):
        z, w = quad.contour_nodes(quad.CircleContour(0.5, n))
        errs.append(abs(np.sum(np.exp(z) / z * w) - 1.0))
    assert all(b <= a + 1e-15 for a, b in zip(errs, errs[1:]))


def test_contour_pole_on_circle_raises():
    c = quad.CircleContour(1.0)
    with pytest.raises(AccuracyError):
        quad.contour_integrate(c, lambda z: 1.0 / (z - 1.0))


def test_contour_validation():
    with pytest.raises(DomainError):
        quad.CircleContour(0.0)
    with pytest.raises(DomainError):
        quad.CircleContour(1.0, 6)
    with pytest.raises(DomainError):
        quad.CircleContour(1.0, 15)


def test_default_circle():
    assert quad.default_circle(2.0).radius == 1.0
    assert quad.default_circle(math.inf).radius == 0.5


# --- line integrals ---

def test_half_line_examples():
    assert quad.half_line_integrate(lambda x: np.exp(-x)) == pytest.approx(1.0, rel=1e-12)
    assert quad.half_line_integrate(lambda x: x**3 * np.exp(-x)) == pytest.approx(6.0, rel=1e-12)
    assert quad.half_line_integrate(lambda x: np.sqrt(x) * np.exp(-x)) == pytest.approx(
        math.sqrt(math.pi) / 2, rel=1e-12)


def test_half_line_integrable_singularity():
    got = quad.half_line_integrate(lambda x: np.exp(-x) / np.sqrt(x))
    assert got == pytest.approx(math.sqrt(math.pi), rel=1e-10)


def test_half_line_slow_decay_raises():
    with pytest.raises(AccuracyError):
        quad.half_line_integrate(lambda x: 1.0 / (1.0 + x))


def test_half_line_breakpoints_capture_kinks():
    f = lambda x: np.where(x < 2.0, x, 2.0) * np.exp(-x)
    # int_0^2 x e^-x + 2 int_2^inf e^-x
    exact = 1.0 - 3.0 * math.exp(-2.0) + 2.0 * math.exp(-2.0)
    assert quad.half_line_integrate(f, breakpoints=(2.0,)) == pytest.approx(exact, rel=1e-12)


def test_half_line_error_estimate_is_carried():
    val, err = quad.half_line_integrate(lambda x: np.exp(-x), full_output=True)
    assert abs(val - 1.0) < 1e-12
    assert 0 <= err < 1e-10


def test_real_line_examples():
    assert quad.real_line_integrate(lambda x: np.exp(-x**2 / 2), "gaussian") == pytest.approx(
        SQRT_2PI, rel=1e-12)
    assert abs(quad.real_line_integrate(lambda x: x * np.exp(-x**2 / 2), "gaussian")) < 1e-13
    assert quad.real_line_integrate(lambda x: np.exp(-np.abs(x))) == pytest.approx(2.0, rel=1e-12)


def test_composite_rule_concatenates_panels():
    nodes, weights = quad.composite_rule([0.0, 1.0, 3.0], n_nodes=16)
    assert len(nodes) == 32
    assert np.all(np.diff(nodes) > 0)
    got = np.sum(weights * np.exp(nodes))
    assert got == pytest.approx(math.exp(3.0) - 1.0, rel=1e-13)
