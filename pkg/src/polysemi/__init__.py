"""Exact tools for polynomial composition, semiconjugacy and invariant curves."""

from .poly_core import AffineMap, ExactScalar, Polynomial

__version__ = "0.1.0"

__all__ = ["AffineMap", "ExactScalar", "Polynomial", "__version__"]
