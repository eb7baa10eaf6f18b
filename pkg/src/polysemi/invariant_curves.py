"""Invariant curves u(x) - v(y) = 0 of split maps (x, y) -> (f(x), g(y)).

A curve of this shape is carried into itself exactly when some t satisfies
``t o u == u o f`` and ``t o v == v o g``.  Such systems come from a
pair of parametrizations pi, rho with ``f o pi == pi o h`` and
``g o rho == rho o h``: the least common left composite ``u o pi == v o rho``
of the two parametrizations gives the curve, and t is the polynomial
that semiconjugates h through it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import compositional_join, join_meet
from .errors import ConsistencyFailure, MalformedCurve, ParseError, SpecialInput
from .poly_core import AffineMap, ExactScalar, Polynomial, compose, fixed_points, format_polynomial
from .poly_core.scalar import ONE, ZERO
from .poly_core.textio import format_sparse, parse_sparse
from .semiconj_engine import solve_A
from .special_forms import NOT_SPECIAL, classify_special

__all__ = [
    "BivariatePoly",
    "CurveSystem",
    "ParametrizedPair",
    "build_curve",
    "format_curve",
    "join_pair",
    "line_curves",
    "medvedev_scanlon_form",
    "verify_invariant",
]

_VARS = ("x", "y")


class BivariatePoly:
    """Dense polynomial in x and y; ``rows[i][j]`` is the coefficient of x**i y**j."""

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        rows = [[c if isinstance(c, ExactScalar) else ExactScalar(c) for c in r] for r in rows]
        width = 0
        for r in rows:
            for j in range(len(r) - 1, -1, -1):
                if r[j]:
                    width = max(width, j + 1)
                    break
        rows = [r[:width] + [ZERO] * (width - len(r[:width])) for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        self.rows = tuple(tuple(r) for r in rows) if width else ()

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], ExactScalar]) -> "BivariatePoly":
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            return cls()
        h = max(i for i, _ in terms) + 1
        w = max(j for _, j in terms) + 1
        rows = [[ZERO] * w for _ in range(h)]
        for (i, j), c in terms.items():
            rows[i][j] = c
        return cls(rows)

    @classmethod
    def from_separated(cls, u: Polynomial, v: Polynomial) -> "BivariatePoly":
        """The polynomial u(x) - v(y)."""
        terms: dict[tuple[int, int], ExactScalar] = {}
        for i, c in enumerate(u.coeffs):
            terms[(i, 0)] = c
        for j, c in enumerate(v.coeffs):
            terms[(0, j)] = terms.get((0, j), ZERO) - c
        return cls.from_terms(terms)

    @classmethod
    def parse(cls, text: str) -> "BivariatePoly":
        """Parse ``lhs = rhs`` (or a bare expression) in x and y as lhs - rhs."""
        sides = text.split("=")
        if len(sides) > 2:
            raise ParseError(f"more than one '=' in {text!r}")
        terms = parse_sparse(sides[0], _VARS)
        if len(sides) == 2:
            for k, c in parse_sparse(sides[1], _VARS).items():
                terms[k] = terms.get(k, ZERO) - c
        return cls.from_terms(terms)

    def terms(self) -> dict[tuple[int, int], ExactScalar]:
        return {(i, j): c for i, r in enumerate(self.rows) for j, c in enumerate(r) if c}

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        t = self.terms()
        for k, c in other.terms().items():
            t[k] = t.get(k, ZERO) + c
        return BivariatePoly.from_terms(t)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly.from_terms({k: -c for k, c in self.terms().items()})

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        return self + (-other)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: dict[tuple[int, int], ExactScalar] = {}
        for (i1, j1), c1 in self.terms().items():
            for (i2, j2), c2 in other.terms().items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return BivariatePoly.from_terms(out)

    def y_slices(self) -> list[Polynomial]:
        """Coefficients in y, each a polynomial in x."""
        width = len(self.rows[0]) if self.rows else 0
        return [Polynomial(r[j] for r in self.rows) for j in range(width)]

    @classmethod
    def from_y_slices(cls, slices: list[Polynomial]) -> "BivariatePoly":
        return cls.from_terms({(i, j): c for j, s in enumerate(slices) for i, c in enumerate(s.coeffs)})

    def transpose(self) -> "BivariatePoly":
        return BivariatePoly.from_terms({(j, i): c for (i, j), c in self.terms().items()})

    def divmod_y(self, divisor: "BivariatePoly") -> tuple["BivariatePoly", "BivariatePoly"]:
        """Division with y as the main variable; the divisor's leading
        y-coefficient must be a nonzero constant."""
        ds = divisor.y_slices()
        if not ds:
            raise ZeroDivisionError("division by zero bivariate polynomial")
        lead = ds[-1]
        if lead.degree != 0:
            raise ValueError("leading y-coefficient of the divisor is not constant")
        inv = lead.coeff(0).inverse()
        rem = self.y_slices()
        m = len(ds) - 1
        quot = [Polynomial()] * max(len(rem) - m, 0)
        for k in range(len(rem) - 1 - m, -1, -1):
            c = rem[k + m] * inv
            if c.is_zero():
                continue
            quot[k] = c
            for j, dj in enumerate(ds):
                rem[k + j] = rem[k + j] - c * dj
        return BivariatePoly.from_y_slices(quot), BivariatePoly.from_y_slices(rem[:m])

    def separated(self) -> tuple[Polynomial, Polynomial]:
        """(u, v) with self == u(x) - v(y); constants go to u."""
        u = [ZERO]
        v = [ZERO]
        for (i, j), c in self.terms().items():
            if i and j:
                raise MalformedCurve(f"mixed term x^{i}*y^{j} in {self}")
            if j:
                v += [ZERO] * (j + 1 - len(v))
                v[j] = -c
            else:
                u += [ZERO] * (i + 1 - len(u))
                u[i] = c
        return Polynomial(u), Polynomial(v)

    def __str__(self) -> str:
        return format_sparse(self.terms(), _VARS)

    def __repr__(self) -> str:
        return f"BivariatePoly({self})"


@dataclass(frozen=True)
class ParametrizedPair:
    pi: Polynomial
    rho: Polynomial
    h: Polynomial

    def check(self, f: Polynomial, g: Polynomial) -> bool:
        return (compose(f, self.pi) == compose(self.pi, self.h)
                and compose(g, self.rho) == compose(self.rho, self.h))


@dataclass(frozen=True)
class CurveSystem:
    u: Polynomial
    v: Polynomial
    t: Polynomial
    f: Polynomial
    g: Polynomial
    # Lines x = const (or y = const) through a fixed point, stored with the
    # free side's polynomial equal to zero.
    line: bool = False

    def __post_init__(self):
        if compose(self.t, self.u) != compose(self.u, self.f):
            raise ConsistencyFailure("t o u != u o f")
        if compose(self.t, self.v) != compose(self.v, self.g):
            raise ConsistencyFailure("t o v != v o g")
        if not self.line and _gcd(self.u.degree, self.v.degree) != 1:
            raise ConsistencyFailure(f"degrees {self.u.degree}, {self.v.degree} are not coprime")

    def curve(self) -> BivariatePoly:
        return BivariatePoly.from_separated(self.u, self.v)

    def text(self) -> str:
        return format_curve(self.u, self.v)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def format_curve(u: Polynomial, v: Polynomial) -> str:
    """``u(x) - v(y) = 0`` with each side in the univariate text format."""
    right = format_polynomial(v, "y")
    if len(v.support()) > 1 or right.startswith("-"):
        right = f"({right})"
    return f"{format_polynomial(u, 'x')} - {right} = 0"


def join_pair(pi: Polynomial, rho: Polynomial) -> tuple[Polynomial, Polynomial] | None:
    """u, v with ``u o pi == v o rho`` and deg(u o pi) = lcm(deg pi, deg rho)."""
    return compositional_join(pi, rho)


def _require_non_special(*polys: Polynomial) -> None:
    for P in polys:
        if P.degree >= 2 and classify_special(P).kind != NOT_SPECIAL:
            raise SpecialInput(f"{P} is special")


def build_curve(pair: ParametrizedPair, f: Polynomial, g: Polynomial) -> CurveSystem:
    """The invariant curve of (f, g) attached to the parametrizations in ``pair``."""
    _require_non_special(f, g)
    if not pair.check(f, g):
        raise ValueError("f o pi == pi o h and g o rho == rho o h must both hold")
    pi, rho, h = pair.pi, pair.rho, pair.h
    # Strip a common right factor first so that u and v get coprime degrees.
    if h.degree >= 2 and min(pi.degree, rho.degree) > 1:
        jm = join_meet(pi, rho, h)
        if jm.W.degree > 1:
            pi, rho = jm.V1, jm.V2
            wit = solve_A(jm.W, h)
            if wit is None:
                raise ConsistencyFailure("common right factor is not semiconjugate to h")
            h = wit.A
    joined = join_pair(pi, rho)
    if joined is None:
        raise ConsistencyFailure(f"no common left composite of {pi} and {rho}")
    u, v = joined
    S = compose(u, pi)
    if S.degree == 1:
        t = compose(compose(S, h), AffineMap.from_polynomial(S).inverse().as_polynomial())
    else:
        wit = solve_A(S, h)
        if wit is None:
            raise ConsistencyFailure(f"{S} does not semiconjugate {h}")
        t = wit.A
    return CurveSystem(u, v, t, f, g)


def verify_invariant(curve: BivariatePoly, f: Polynomial, g: Polynomial) -> bool:
    """Whether u(f(x)) - v(g(y)) is divisible by the curve u(x) - v(y)."""
    u, v = curve.separated()
    if u.degree < 1 and v.degree < 1:
        raise MalformedCurve("curve has no x and no y terms")
    image = BivariatePoly.from_separated(compose(u, f), compose(v, g))
    if v.degree >= 1:
        _, rem = image.divmod_y(curve)
    else:
        # x = const: divide with x as the main variable instead.
        _, rem = image.transpose().divmod_y(curve.transpose())
    return rem.is_zero()


def line_curves(f: Polynomial, g: Polynomial, axis: str = "x") -> tuple[list[CurveSystem], bool]:
    """Invariant lines ``x = xi`` (axis "x", xi fixed by f) or ``y = xi``.

    Returns the lines found and whether every fixed point lay in Q(i).
    """
    P = f if axis == "x" else g
    data = fixed_points(P)
    out = []
    for xi in data.values:
        line = Polynomial([-xi, ONE])
        t = compose(P, Polynomial([xi, ONE])) - xi
        zero = Polynomial()
        if axis == "x":
            out.append(CurveSystem(line, zero, t, f, g, line=True))
        else:
            out.append(CurveSystem(zero, line, t, f, g, line=True))
    return out, data.split


def medvedev_scanlon_form(f: Polynomial, curve: CurveSystem) -> tuple[str, Polynomial]:
    """For f == g, rewrite the curve as a graph ``x = p(y)`` or ``y = p(x)``.

    Returns the solved variable and p; p commutes with f.
    """
    _require_non_special(f)
    if curve.f != f or curve.g != f:
        raise ValueError("curve must belong to the diagonal map (f, f)")
    u, v = curve.u, curve.v
    if u.degree == 1:
        which, p = "x", compose(AffineMap.from_polynomial(u).inverse().as_polynomial(), v)
    elif v.degree == 1:
        which, p = "y", compose(AffineMap.from_polynomial(v).inverse().as_polynomial(), u)
    else:
        raise ConsistencyFailure(f"curve {curve.text()} is not a graph")
    if compose(p, f) != compose(f, p):
        raise ConsistencyFailure(f"{p} does not commute with {f}")
    return which, p
