"""Shared weight catalog and shift geometry for the test modules.

The two product-form configs are the ones the acceptance suite pins down;
everything else covers a family/branch corner (nu signs, scales, shifts).
The positive-delta ladders are geometric: clustered near-equal deltas
condition the partial-fraction split badly, a spread ladder keeps its
coefficients small even when a self-convolution doubles every delta.
"""

from polya_kernels import weights as wt

POLYA_H2_REAL = dict(gamma=0.3, deltas=(0.2, -0.1, 0.15, 0.25, -0.05, 0.1, 0.3, 0.2))
POLYA_H2_POS_DELTAS = (1.0, 0.62, 0.38, 0.24, 0.15, 0.09, 0.055, 0.034, 0.021)
POLYA_M_DELTAS = (1.0, 0.62, 0.38, 0.24, 0.15, 0.09, 0.055, 0.034)


def catalog(n=1):
    """One spec per family/branch at matrix dimension n."""
    return [
        wt.gaussian(1.0, n=n),
        wt.laguerre_h2(float(n), n=n),
        wt.laguerre_m(0.0, 1.0, n=n),
        wt.laguerre_m(2.0, 0.7, n=n),
        wt.laguerre_m(-0.5, 1.3, n=n),
        wt.laguerre_m(0.5, 1.0, n=n),
        wt.polya_product(support="real", n=n, **POLYA_H2_REAL),
        wt.polya_product(0.0, POLYA_H2_POS_DELTAS, "positive", n=n),
        wt.polya_product_m(1.0, POLYA_M_DELTAS, 0.1, n=n),
        wt.polya_product_m(-0.5, (0.3, 0.2), 0.5, n=n),
    ]


def fixed_shift_points(spec, n):
    """Well-separated shift eigenvalues at the weight's bulk scale.

    Clustered shift points make the mapped Lagrange polynomials cancel
    catastrophically in floating point; spacing on the order of the mean
    eigenvalue gap keeps the Gram residual near roundoff.
    """
    if spec.space == "H2":
        return tuple(1.2 * (m - (n - 1) / 2.0) for m in range(n))
    return tuple(2.0 * (m + 0.5) for m in range(n))


def weight_mass(spec):
    """Quadrature of the weight over its support (reference route)."""
    from polya_kernels import quadrature as qd

    breaks = tuple(wt.support_breakpoints(spec))
    two_sided = spec.family == "gaussian" or (
        spec.family == "polya_product" and spec.support == "real")
    integrate = qd.real_line_integrate if two_sided else qd.half_line_integrate
    return integrate(lambda x: wt.eval_weight(spec, x), breakpoints=breaks)
