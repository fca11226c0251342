"""Zeros of orthogonal polynomials and the doubly stochastic matrices
relating consecutive and associated zero sets."""

from ._core import (
    ConvergenceError,
    DepthError,
    OverflowError,
    ParameterError,
    Scheme,
    check_doubly_stochastic,
    check_majorization,
    classical_scheme,
    from_sequences,
    gauss_rule,
    matrix,
    verify,
    zeros,
)

__all__ = [
    "ConvergenceError",
    "DepthError",
    "OverflowError",
    "ParameterError",
    "Scheme",
    "check_doubly_stochastic",
    "check_majorization",
    "classical_scheme",
    "from_sequences",
    "gauss_rule",
    "matrix",
    "verify",
    "zeros",
]
