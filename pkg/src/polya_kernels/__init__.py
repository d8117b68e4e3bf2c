"""Correlation kernels and joint densities for Polya ensembles.

The package covers two matrix spaces: Hermitian matrices (space tag
"H2") and the squared singular values of chiral/rectangular matrices
(space tag "M", Bessel order nu).  A weight from the catalog plus a
dimension n and a shift mode (none, fixed matrix, or an independent
second ensemble) defines an eigenvalue process; the modules here build
its bi-orthonormal pair, evaluate the correlation kernel and k-point
functions along two independent routes, and compare against direct
matrix sampling.
"""

from .errors import (AccuracyError, DomainError, PolyaKernelsError,
                     SchemaError, UsageError)
from .weights import (WeightSpec, gaussian, laguerre_h2, laguerre_m,
                      polya_product, polya_product_m, with_n,
                      eval_weight, one_point_weight, eval_transform,
                      convolved_spec, convolve)
from .ensembles import (ShiftConfig, EnsembleConfig, ensemble_config,
                        no_shift, fixed_shift, ensemble_shift,
                        biorth_pair, kernel_evaluator, kernel_grid,
                        evaluate_kernel, correlation_rk, jpdf_eval,
                        normalization_constants)
from .montecarlo import (sample_h2_gaussian, sample_m_ginibre,
                         sample_h1_gaussian, empirical_density,
                         jpdf_compare_2d)
from .toeplitz import toeplitz_spec, banded_toeplitz_det, rhs_hankel_det

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "DomainError", "PolyaKernelsError", "SchemaError",
    "UsageError",
    "WeightSpec", "gaussian", "laguerre_h2", "laguerre_m",
    "polya_product", "polya_product_m", "with_n", "eval_weight",
    "one_point_weight", "eval_transform", "convolved_spec", "convolve",
    "ShiftConfig", "EnsembleConfig", "ensemble_config", "no_shift",
    "fixed_shift", "ensemble_shift", "biorth_pair", "kernel_evaluator",
    "kernel_grid", "evaluate_kernel", "correlation_rk", "jpdf_eval",
    "normalization_constants",
    "sample_h2_gaussian", "sample_m_ginibre", "sample_h1_gaussian",
    "empirical_density", "jpdf_compare_2d",
    "toeplitz_spec", "banded_toeplitz_det", "rhs_hankel_det",
]
