from __future__ import annotations

from dataclasses import dataclass

from .polynomial import Polynomial, compose
from .scalar import ONE, ZERO, ExactScalar, as_scalar


@dataclass(frozen=True)
class AffineMap:
    """The map z -> a*z + b with a != 0."""

    a: ExactScalar
    b: ExactScalar = ZERO

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))
        if not self.a:
            raise ValueError("affine map needs a nonzero linear coefficient")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(ONE, ZERO)

    @classmethod
    def translation(cls, b) -> "AffineMap":
        return cls(ONE, b)

    @classmethod
    def from_polynomial(cls, P: Polynomial) -> "AffineMap":
        if P.degree != 1:
            raise ValueError("affine maps are exactly the degree-one polynomials")
        return cls(P.coeff(1), P.coeff(0))

    def as_polynomial(self) -> Polynomial:
        return Polynomial([self.b, self.a])

    def inverse(self) -> "AffineMap":
        inv = self.a.inverse()
        return AffineMap(inv, -self.b * inv)

    def then(self, other: "AffineMap") -> "AffineMap":
        """``other o self``."""
        return AffineMap(other.a * self.a, other.a * self.b + other.b)

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        """``self o other``."""
        return other.then(self)

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return x * self.a + self.b
        return self.a * as_scalar(x) + self.b

    def is_identity(self) -> bool:
        return self.a == ONE and not self.b

    def __str__(self):
        return str(self.as_polynomial())


def affine_conjugate(P: Polynomial, lam: AffineMap) -> Polynomial:
    """Return ``lam o P o lam^{-1}``."""
    if P.degree < 1:
        raise ValueError("conjugation needs deg P >= 1")
    inner = compose(P, lam.inverse().as_polynomial())
    return lam(inner)
