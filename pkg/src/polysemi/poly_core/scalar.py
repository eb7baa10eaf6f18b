"""Exact Gaussian rationals ``re + im*i`` with ``re, im`` in Q."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = ["ExactScalar", "as_scalar", "ZERO", "ONE", "I"]


class ExactScalar:
    """Immutable element of Q(i).

    Both parts are :class:`fractions.Fraction`, so denominators are positive
    and reduced, and equality is structural.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if not isinstance(re, Fraction):
            re = Fraction(re)
        if not isinstance(im, Fraction):
            im = Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactScalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return self.re == other.real and self.im == other.imag
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return ExactScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return ExactScalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ExactScalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return ExactScalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, ExactScalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return ExactScalar._raw(a * c, d)
            return ExactScalar._raw(a * c, a * d)
        if not d:
            return ExactScalar._raw(a * c, b * c)
        return ExactScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        if not self.im:
            return ExactScalar._raw(1 / self.re, self.im)
        n = self.re * self.re + self.im * self.im
        return ExactScalar._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, ExactScalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return ExactScalar._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- roots ----------------------------------------------------------
    def nth_roots(self, n: int) -> list["ExactScalar"]:
        """All w in Q(i) with w**n == self, in a deterministic order."""
        if n < 1:
            raise ValueError("root order must be positive")
        if not self:
            return [ZERO]
        if n == 1:
            return [self]
        base = _one_nth_root(self, n)
        if base is None:
            return []
        roots = [base * u for u in _UNITS if u ** n == ONE]
        return sorted(set(roots), key=ExactScalar.sort_key)

    # -- formatting -----------------------------------------------------
    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"ExactScalar({self.re!s}, {self.im!s})"

    def __str__(self):
        from .textio import format_scalar

        return format_scalar(self)

    def to_json(self) -> list[int]:
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, item) -> "ExactScalar":
        rn, rd, iN, iD = item
        return cls(Fraction(rn, rd), Fraction(iN, iD))


def _coerce(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Rational)):
        return ExactScalar._raw(Fraction(value), Fraction(0))
    if isinstance(value, complex):
        return ExactScalar(Fraction(value.real), Fraction(value.imag))
    return None


def as_scalar(value) -> ExactScalar:
    """Coerce ints, Fractions, exact complex numbers and scalars to ExactScalar."""
    out = _coerce(value)
    if out is None:
        if isinstance(value, float):
            return ExactScalar(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as an element of Q(i)")
    return out


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
_UNITS = (ONE, I, -ONE, -I)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _gaussian_int_power(re: int, im: int, n: int) -> tuple[int, int]:
    rr, ri = 1, 0
    br, bi = re, im
    while n:
        if n & 1:
            rr, ri = rr * br - ri * bi, rr * bi + ri * br
        n >>= 1
        if n:
            br, bi = br * br - bi * bi, 2 * br * bi
    return rr, ri


def _one_nth_root(c: ExactScalar, n: int) -> ExactScalar | None:
    # c = N / den with N a Gaussian integer; a root w of c gives the Gaussian
    # integer w*den as a root of N*den**(n-1) (Z[i] is integrally closed).
    den = _lcm(c.re.denominator, c.im.denominator)
    mr = c.re.numerator * (den // c.re.denominator) * den ** (n - 1)
    mi = c.im.numerator * (den // c.im.denominator) * den ** (n - 1)
    digits = max(len(str(abs(mr))), len(str(abs(mi))), 1)
    with mpmath.workdps(digits // n + 30):
        principal = mpmath.root(mpmath.mpc(mr, mi), n)
        step = mpmath.expjpi(mpmath.mpf(2) / n)
        cand = principal
        # Field roots form one coset of the units u with u**n == 1, so the
        # first one appears among the first n // gcd(n, 4) candidates.
        for _ in range(n // math.gcd(n, 4)):
            gr = int(mpmath.nint(cand.real))
            gi = int(mpmath.nint(cand.imag))
            if abs(cand.real - gr) < 0.25 and abs(cand.imag - gi) < 0.25:
                if _gaussian_int_power(gr, gi, n) == (mr, mi):
                    return ExactScalar(Fraction(gr, den), Fraction(gi, den))
            cand = cand * step
    return None
