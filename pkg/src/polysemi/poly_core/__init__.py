"""Exact polynomial arithmetic over the Gaussian rationals."""

from .affine import AffineMap, affine_conjugate
from .linalg import nullspace, rref, solve_linear
from .polynomial import (
    DEFAULT_DEGREE_CAP,
    ZERO_DEGREE,
    AdicExpansion,
    Polynomial,
    Z,
    adic_expansion,
    compose,
    gcd,
    iterate,
    odd_part,
    poly_divmod,
    squarefree_decomposition,
)
from .roots import (
    CriticalData,
    RootData,
    critical_value_polynomial,
    derivative_and_critical_data,
    field_roots,
    fixed_points,
)
from .scalar import ONE, ZERO, ExactScalar, I, as_scalar
from .textio import format_polynomial, format_scalar, parse_polynomial, parse_scalar

__all__ = [
    "AdicExpansion",
    "AffineMap",
    "CriticalData",
    "DEFAULT_DEGREE_CAP",
    "ExactScalar",
    "I",
    "ONE",
    "Polynomial",
    "RootData",
    "Z",
    "ZERO",
    "ZERO_DEGREE",
    "adic_expansion",
    "affine_conjugate",
    "as_scalar",
    "compose",
    "critical_value_polynomial",
    "derivative_and_critical_data",
    "field_roots",
    "fixed_points",
    "format_polynomial",
    "format_scalar",
    "gcd",
    "iterate",
    "nullspace",
    "odd_part",
    "parse_polynomial",
    "parse_scalar",
    "poly",
    "poly_divmod",
    "rref",
    "solve_linear",
    "squarefree_decomposition",
]


def poly(text: str) -> Polynomial:
    """Shorthand for :meth:`Polynomial.parse`."""
    return Polynomial.parse(text)
