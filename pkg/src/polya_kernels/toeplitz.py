"""Banded Toeplitz determinants and their reciprocal-series Hankel mirror.

A spec holds the coefficients c_{-L},...,c_{n-1} of a lower-bandwidth-L
Toeplitz matrix. Its determinant equals, up to the sign (-1)^{nL}, an L x L
Hankel determinant built from Taylor coefficients of 1/F where
F(t) = sum_j c_{j-L} t^j. Both sides are implemented independently so the
identity can serve as a cross-check.
"""

import dataclasses

import numpy as np

from . import series
from .errors import DomainError


@dataclasses.dataclass(frozen=True)
class ToeplitzSpec:
    n: int
    L: int
    c: tuple  # c_{-L}, ..., c_{n-1}, ascending index


def toeplitz_spec(n, L, c):
    n = int(n)
    L = int(L)
    if n < 2:
        raise DomainError("toeplitz spec needs n >= 2")
    if not 1 <= L <= n - 1:
        raise DomainError("toeplitz spec needs 1 <= L <= n-1")
    c = tuple(complex(v) for v in c)
    if len(c) != n + L:
        raise DomainError("toeplitz spec needs exactly n+L coefficients")
    if c[0] != 1.0:
        raise DomainError("toeplitz spec needs c_{-L} = 1")
    return ToeplitzSpec(n=n, L=L, c=c)


def toeplitz_matrix(spec):
    """The n x n matrix with entry (a, b) = c_{b-a} for b-a >= -L, else 0."""
    n, L = spec.n, spec.L
    mat = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            k = b - a
            if k >= -L:
                mat[a, b] = spec.c[k + L]
    return mat


def banded_toeplitz_det(spec):
    """Left-hand side: dense LU determinant of the banded Toeplitz matrix."""
    return complex(np.linalg.det(toeplitz_matrix(spec)))


def reciprocal_coefficients(spec):
    """Taylor coefficients of 1/F(t) through order n+L-1."""
    f = np.asarray(spec.c, dtype=complex)
    return series.series_inverse(f, spec.n + spec.L)


def rhs_hankel_det(spec):
    """Right-hand side: (-1)^{nL} det of the L x L Hankel block of 1/F."""
    n, L = spec.n, spec.L
    inv = reciprocal_coefficients(spec)
    # entry (a, b) holds d_{L-1+b-a} where d_{L-1+j} = [t^{n+j}] 1/F
    mat = np.empty((L, L), dtype=complex)
    for a in range(L):
        for b in range(L):
            mat[a, b] = inv[n + b - a]
    sign = -1.0 if (n * L) % 2 else 1.0
    return complex(sign * np.linalg.det(mat))


def check_identity(spec):
    """|LHS - RHS| / max(1, |LHS|)."""
    lhs = banded_toeplitz_det(spec)
    rhs = rhs_hankel_det(spec)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def random_spec(rng, n=None, L=None):
    """Spec with coefficients uniform in the complex unit disk."""
    if n is None:
        n = int(rng.integers(2, 9))
    if L is None:
        L = int(rng.integers(1, n))
    count = n + L - 1
    r = np.sqrt(rng.uniform(0.0, 1.0, count))
    ang = rng.uniform(0.0, 2.0 * np.pi, count)
    coeffs = (1.0,) + tuple(r * np.exp(1j * ang))
    return toeplitz_spec(n, L, coeffs)


def trial_residuals(count, seed, n=None, L=None):
    """Residuals of check_identity over `count` random specs."""
    rng = np.random.default_rng(seed)
    return np.array([check_identity(random_spec(rng, n=n, L=L))
                     for _ in range(count)])
