"""Dense univariate polynomials over Q(i)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import BudgetExceeded
from .scalar import ONE, ZERO, ExactScalar, as_scalar

__all__ = [
    "Polynomial",
    "AdicExpansion",
    "ZERO_DEGREE",
    "DEFAULT_DEGREE_CAP",
    "Z",
    "compose",
    "iterate",
    "poly_divmod",
    "gcd",
    "squarefree_decomposition",
    "odd_part",
    "adic_expansion",
]

ZERO_DEGREE = -1
DEFAULT_DEGREE_CAP = 100_000

# Above this many coefficients, products go through Kronecker substitution.
_KRONECKER_THRESHOLD = 48


class Polynomial:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of z**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, ExactScalar) else as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _trusted(cls, coeffs: Sequence[ExactScalar]) -> "Polynomial":
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str, var: str = "z") -> "Polynomial":
        from .textio import parse_polynomial

        return parse_polynomial(text, var)

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        if isinstance(obj, dict):
            obj = obj["coeffs"]
        return cls(ExactScalar.from_json(c) for c in obj)

    # -- basic queries --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> ExactScalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int) -> ExactScalar:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_real(self) -> bool:
        return all(not c.im for c in self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == ((other,) if other else ())

    def __hash__(self):
        return hash(self.coeffs)

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in reversed(self.coeffs)))

    def __repr__(self):
        return f"Polynomial.parse({str(self)!r})"

    def __str__(self):
        from .textio import format_polynomial

        return format_polynomial(self)

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    # -- ring operations ------------------------------------------------
    def __neg__(self):
        return Polynomial._trusted([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial._trusted(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial._trusted(_mul_coeffs(self.coeffs, other.coeffs))
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        if not s:
            return Polynomial()
        return Polynomial._trusted([c * s for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = as_scalar(other)
        inv = s.inverse()
        return Polynomial._trusted([c * inv for c in self.coeffs])

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = ONE_POLY
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divmod(self, _as_poly(other))

    def __floordiv__(self, other):
        return poly_divmod(self, _as_poly(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, _as_poly(other))[1]

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return compose(self, x)
        if isinstance(x, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- derived polynomials --------------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial._trusted([c * i for i, c in enumerate(self.coeffs) if i])

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self / self.lead

    def normalized(self) -> "Polynomial":
        """Monic with zero constant term: the representative of ``{a*P + b}``."""
        if self.degree < 1:
            raise ValueError("normalization needs degree >= 1")
        p = self - self.coeffs[0]
        return p.monic()

    def complex_coeffs(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]


def _as_poly(value):
    if isinstance(value, Polynomial):
        return value
    try:
        return Polynomial([as_scalar(value)])
    except TypeError:
        return None


ONE_POLY = Polynomial._trusted([ONE])
Z = Polynomial._trusted([ZERO, ONE])


# -- multiplication ----------------------------------------------------------
def _int_parts(coeffs: Sequence[ExactScalar]) -> tuple[int, list[int], list[int]]:
    den = 1
    for c in coeffs:
        for part in (c.re, c.im):
            d = part.denominator
            if d != 1:
                den = den // math.gcd(den, d) * d
    re = [c.re.numerator * (den // c.re.denominator) for c in coeffs]
    im = [c.im.numerator * (den // c.im.denominator) for c in coeffs]
    return den, re, im


def _school_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pack(digits: list[int], k: int) -> int:
    off = 1 << (k - 1)
    nbytes = k // 8
    raw = b"".join((d + off).to_bytes(nbytes, "little") for d in digits)
    return int.from_bytes(raw, "little") - _offset(len(digits), k)


def _offset(count: int, k: int) -> int:
    # sum_{i<count} 2**(k-1) * 2**(k*i)
    return (1 << (k - 1)) * (((1 << (k * count)) - 1) // ((1 << k) - 1))


def _unpack(value: int, count: int, k: int) -> list[int]:
    off = 1 << (k - 1)
    nbytes = k // 8
    raw = (value + _offset(count, k)).to_bytes(nbytes * count, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - off
        for i in range(count)
    ]


def _kronecker_int(a: list[int], b: list[int]) -> list[int]:
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    # Each field must hold both the inputs and every output coefficient.
    bound = max(ma * mb * min(len(a), len(b)), ma, mb)
    k = bound.bit_length() + 2
    k += -k % 8
    count = len(a) + len(b) - 1
    return _unpack(_pack(a, k) * _pack(b, k), count, k)


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    if not any(a) or not any(b):
        return [0] * (len(a) + len(b) - 1)
    if min(len(a), len(b)) < _KRONECKER_THRESHOLD:
        return _school_int(a, b)
    return _kronecker_int(a, b)


def _mul_coeffs(a: Sequence[ExactScalar], b: Sequence[ExactScalar]) -> list[ExactScalar]:
    if not a or not b:
        return []
    if len(a) == 1 or len(b) == 1:
        if len(a) == 1:
            a, b = b, a
        s = b[0]
        return [c * s for c in a]
    da, ar, ai = _int_parts(a)
    db, br, bi = _int_parts(b)
    den = da * db
    real_a = not any(ai)
    real_b = not any(bi)
    if real_a and real_b:
        re = _int_mul(ar, br)
        im = None
    elif real_b:
        re = _int_mul(ar, br)
        im = _int_mul(ai, br)
    elif real_a:
        re = _int_mul(ar, br)
        im = _int_mul(ar, bi)
    else:
        # Gauss's three-multiplication trick.
        t1 = _int_mul(ar, br)
        t2 = _int_mul(ai, bi)
        t3 = _int_mul([x + y for x, y in zip(ar, ai)], [x + y for x, y in zip(br, bi)])
        re = [x - y for x, y in zip(t1, t2)]
        im = [z - x - y for x, y, z in zip(t1, t2, t3)]
    zero = Fraction(0)
    if im is None:
        return [ExactScalar._raw(Fraction(r, den), zero) for r in re]
    return [ExactScalar._raw(Fraction(r, den), Fraction(m, den)) for r, m in zip(re, im)]


# -- composition --------------------------------------------------------------
def compose(P: Polynomial, Q: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    """Return ``P(Q(z))``."""
    if P.degree >= 1 and Q.degree >= 1 and P.degree * Q.degree > degree_cap:
        raise BudgetExceeded(
            f"composite degree {P.degree * Q.degree} exceeds cap {degree_cap}"
        )
    if P.degree <= 0:
        return P
    if Q.degree <= 0:
        return Polynomial([P(Q.coeff(0))])
    if Q == Z:
        return P
    acc = Polynomial._trusted([P.coeffs[-1]])
    for c in reversed(P.coeffs[:-1]):
        acc = acc * Q
        if c:
            acc = acc + c
    return acc


def iterate(P: Polynomial, k: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    """Return the k-fold composition of P with itself (``z`` for k = 0)."""
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    if k == 0:
        return Z
    if P.degree < 1:
        raise ValueError("iterate needs deg P >= 1")
    if P.degree ** k > degree_cap:
        raise BudgetExceeded(f"iterate degree {P.degree}**{k} exceeds cap {degree_cap}")
    result = P
    for _ in range(k - 1):
        result = compose(P, result, degree_cap)
    return result


# -- Euclidean structure ------------------------------------------------------
def poly_divmod(P: Polynomial, D: Polynomial) -> tuple[Polynomial, Polynomial]:
    if D.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if P.degree < D.degree:
        return Polynomial(), P
    rem = list(P.coeffs)
    dd = D.degree
    inv = D.lead.inverse()
    dcoeffs = D.coeffs
    quot = [ZERO] * (P.degree - dd + 1)
    for i in range(P.degree - dd, -1, -1):
        c = rem[i + dd]
        if not c:
            continue
        q = c * inv
        quot[i] = q
        for j in range(dd):
            dj = dcoeffs[j]
            if dj:
                rem[i + j] = rem[i + j] - q * dj
        rem[i + dd] = ZERO
    return Polynomial._trusted(quot), Polynomial._trusted(rem[:dd])


def gcd(P: Polynomial, Q: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if P.is_zero() and Q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = P, Q
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def squarefree_decomposition(P: Polynomial) -> tuple[ExactScalar, list[Polynomial]]:
    """Yun's algorithm: ``P = c * prod(Q[i-1]**i)`` with squarefree, coprime monic Q."""
    if P.degree < 1:
        raise ValueError("squarefree decomposition needs deg P >= 1")
    c = P.lead
    dP = P.derivative()
    a0 = gcd(P, dP)
    b = poly_divmod(P, a0)[0]
    cc = poly_divmod(dP, a0)[0]
    d = cc - b.derivative()
    factors = []
    while b.degree >= 1:
        a = gcd(b, d)
        factors.append(a)
        b = poly_divmod(b, a)[0]
        cc = poly_divmod(d, a)[0]
        d = cc - b.derivative()
    while factors and factors[-1].degree == 0:
        factors.pop()
    return c, factors


def odd_part(P: Polynomial) -> Polynomial:
    """Monic product of (z - r) over the roots r of odd multiplicity."""
    _, factors = squarefree_decomposition(P)
    out = ONE_POLY
    for i, f in enumerate(factors, start=1):
        if i % 2:
            out = out * f
    return out.monic()


@dataclass(frozen=True)
class AdicExpansion:
    base: Polynomial
    digits: tuple[Polynomial, ...]

    def reconstruct(self) -> Polynomial:
        acc = Polynomial()
        for d in reversed(self.digits):
            acc = acc * self.base + d
        return acc

    def all_constant(self) -> bool:
        return all(d.degree <= 0 for d in self.digits)


def adic_expansion(P: Polynomial, H: Polynomial) -> AdicExpansion:
    """Digits a_i with deg a_i < deg H and sum a_i * H**i == P."""
    if H.degree < 1:
        raise ValueError("adic base must have degree >= 1")
    count = (max(P.degree, 0)) // H.degree + 1
    digits = []
    rest = P
    for _ in range(count):
        rest, r = poly_divmod(rest, H)
        digits.append(r)
    return AdicExpansion(H, tuple(digits))
