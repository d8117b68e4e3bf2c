"""Integration primitives: Gauss rules, circle contours, line integrals.

Gauss-Legendre and Gauss-Gegenbauer rules come from the Golub-Welsch
eigenvalue construction on the Jacobi recurrence matrix.  Contour
integrals use the periodic trapezoid rule (spectrally accurate for
analytic integrands) with adaptive node doubling.  Half-line integrals
use composite Gauss-Legendre panels: geometrically shrinking panels
toward 0 (integrable endpoint singularities) and dyadically growing
panels toward infinity, truncated once panels stop contributing.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .eigh import tql_vectors
from .errors import AccuracyError, DomainError
from .specfun import gamma_fn


class QuadratureRule:
    """Nodes and positive weights for a fixed interval and weight function."""

    __slots__ = ("nodes", "weights", "kind")

    def __init__(self, nodes, weights, kind):
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        self.kind = kind

    def __call__(self, f):
        return np.sum(self.weights * f(self.nodes))


class CircleContour:
    """A circle |z| = radius traversed once counterclockwise."""

    __slots__ = ("radius", "node_count")

    def __init__(self, radius, node_count=256):
        radius = float(radius)
        node_count = int(node_count)
        if radius <= 0:
            raise DomainError("contour radius must be positive")
        if node_count < 8 or node_count % 2:
            raise DomainError("contour node count must be even and at least 8")
        self.radius = radius
        self.node_count = node_count


def default_circle(holomorphy_radius, node_count=256):
    """Half the declared holomorphy radius, or 0.5 for entire transforms."""
    if not math.isfinite(holomorphy_radius):
        return CircleContour(0.5, node_count)
    return CircleContour(0.5 * holomorphy_radius, node_count)


@functools.lru_cache(maxsize=None)
def gauss_legendre_rule(n):
    if n < 1:
        raise DomainError("rule needs at least one node")
    if n == 1:
        return QuadratureRule([0.0], [2.0], "legendre")
    k = np.arange(1.0, n)
    beta = k * k / (4.0 * k * k - 1.0)
    vals, vecs = tql_vectors(np.zeros(n), np.sqrt(beta))
    return QuadratureRule(vals, 2.0 * vecs[0] ** 2, "legendre")


@functools.lru_cache(maxsize=None)
def gauss_gegenbauer_rule(n, nu):
    """Rule for integrals against (1-t^2)^(nu-1/2) on [-1,1]."""
    nu = float(nu)
    if nu <= -0.5:
        raise DomainError("Gegenbauer rule requires nu > -1/2")
    if n < 1:
        raise DomainError("rule needs at least one node")
    mu0 = math.sqrt(math.pi) * gamma_fn(nu + 0.5) / gamma_fn(nu + 1.0)
    if n == 1:
        return QuadratureRule([0.0], [mu0], "gegenbauer")
    beta = np.empty(n - 1)
    beta[0] = 1.0 / (2.0 * nu + 2.0)
    k = np.arange(2.0, n)
    if n > 2:
        # the k=1 entry of this formula is 0/0 at nu=0, hence the split
        beta[1:] = k * (k + 2.0 * nu - 1.0) / ((2.0 * k + 2.0 * nu) * (2.0 * k + 2.0 * nu - 2.0))
    vals, vecs = tql_vectors(np.zeros(n), np.sqrt(beta))
    return QuadratureRule(vals, mu0 * vecs[0] ** 2, "gegenbauer")


def gauss_legendre(n, f):
    return gauss_legendre_rule(n)(f)


def gauss_gegenbauer(n, nu, f):
    return gauss_gegenbauer_rule(n, nu)(f)


def map_panel(rule, a, b):
    """Affine image of a [-1,1] rule on [a,b]: (nodes, weights)."""
    half = 0.5 * (b - a)
    return a + half * (rule.nodes + 1.0), half * rule.weights


def composite_rule(edges, n_nodes=32):
    """Flattened (nodes, weights) of an n_nodes Gauss-Legendre rule on each
    consecutive panel of `edges`."""
    rule = gauss_legendre_rule(n_nodes)
    edges = np.asarray(edges, dtype=float)
    nodes = []
    weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = map_panel(rule, a, b)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def contour_nodes(contour):
    """Nodes z_k and weights w_k with (1/(2 pi i)) oint g dz = sum g(z_k) w_k."""
    n = contour.node_count
    z = contour.radius * np.exp(2j * np.pi * np.arange(n) / n)
    return z, z / n


def contour_integrate(contour, g, tol=1e-12, full_output=False):
    """(1/(2 pi i)) times the integral of g over the circle.

    Periodic trapezoid with node doubling until two refinements agree to
    `tol` relative; raises AccuracyError (with the last two estimates) if
    2**14 nodes are not enough.
    """
    n = contour.node_count
    prev = None
    while n <= 2 ** 14:
        z, w = contour_nodes(CircleContour(contour.radius, n))
        est = np.sum(np.asarray(g(z)) * w)
        if prev is not None:
            err = abs(est - prev)
            if err <= tol * max(1.0, abs(est)):
                return (est, err) if full_output else est
        prev = est
        n *= 2
    raise AccuracyError("contour integral did not converge",
                        details={"last": prev, "nodes": n // 2})


_MAX_PANELS = 60


def half_line_integrate(f, decay="exponential", breakpoints=(), n_nodes=32,
                        full_output=False):
    """Integral of f over [0, inf).

    Composite Gauss-Legendre: panels shrink geometrically toward 0 (so
    integrable singularities like x^(-1/2) converge) and double toward
    infinity until a panel contributes less than 1e-13 of the running
    total.  `breakpoints` inserts panel edges at kinks.  The decay hint is
    advisory; both exponential and gaussian integrands are truncated by
    the same panel test.
    """
    del decay
    rule = gauss_legendre_rule(n_nodes)
    points = sorted(float(b) for b in breakpoints if b > 0)
    total = 0.0
    # fixed region: [0,1] plus any breakpoint segments
    inner_edges = [x for x in points if x < 1.0] + [1.0]
    lo = inner_edges[0]
    # geometric panels down toward 0
    a = lo
    for _ in range(_MAX_PANELS):
        x, w = map_panel(rule, a / 4.0, a)
        piece = np.sum(w * f(x))
        total += piece
        a /= 4.0
        if abs(piece) <= 1e-16 * max(abs(total), 1e-300) or a < 1e-280:
            break
    prev_edge = lo
    for edge in inner_edges[1:]:
        x, w = map_panel(rule, prev_edge, edge)
        total += np.sum(w * f(x))
        prev_edge = edge
    for edge in (x for x in points if x >= 1.0):
        if edge > prev_edge:
            x, w = map_panel(rule, prev_edge, edge)
            total += np.sum(w * f(x))
            prev_edge = edge
    # dyadic panels toward infinity
    a = prev_edge
    width = max(prev_edge, 1.0)
    tail = math.inf
    for _ in range(_MAX_PANELS):
        x, w = map_panel(rule, a, a + width)
        piece = np.sum(w * f(x))
        total += piece
        a += width
        width *= 2.0
        tail = abs(piece)
        if tail <= 1e-13 * max(abs(total), 1e-300):
            break
    else:
        raise AccuracyError("half-line integrand decays too slowly",
                            details={"last_panel": tail, "edge": a})
    return (total, tail) if full_output else total


def real_line_integrate(f, decay="exponential", breakpoints=(), n_nodes=32,
                        full_output=False):
    """Integral over the whole real line as two half-line integrals."""
    pos_breaks = [b for b in breakpoints if b > 0]
    neg_breaks = [-b for b in breakpoints if b < 0]
    right = half_line_integrate(f, decay, pos_breaks, n_nodes, full_output=True)
    left = half_line_integrate(lambda x: f(-x), decay, neg_breaks, n_nodes,
                               full_output=True)
    total = right[0] + left[0]
    err = right[1] + left[1]
    return (total, err) if full_output else total
