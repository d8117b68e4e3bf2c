"""Exception types shared across the package.

The CLI maps these onto exit codes: schema problems exit 2, accuracy
failures exit 3, I/O failures exit 4.
"""

from __future__ import annotations


class PolyaKernelsError(Exception):
    """Base class for all package errors."""


class DomainError(PolyaKernelsError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(PolyaKernelsError, ValueError):
    """Operands are individually valid but incompatible (for example a
    convolution across different matrix spaces, or degenerate shift vectors)."""


class AccuracyError(PolyaKernelsError, ArithmeticError):
    """A computation failed to reach its accuracy contract.

    ``details`` carries whatever diagnostic object is useful for the caller
    (last two quadrature estimates, a Gram matrix, ...).
    """

    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details


class SchemaError(PolyaKernelsError, ValueError):
    """A configuration document failed validation; ``path`` is the offending
    key path, for example ``"shift.x[2]"``."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(message if not path else f"{path}: {message}")
        self.path = path
