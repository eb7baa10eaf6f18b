"""Roots of polynomials that lie in Q(i).

Exact factors of degree one and two are solved in closed form.  For higher
degree, approximate roots are rounded to the only lattice they can lie on
and then confirmed by exact evaluation, so every reported root is exact and
the ``split`` flag tells the caller whether anything was left over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .polynomial import Polynomial, Z, poly_divmod, squarefree_decomposition
from .scalar import ONE, ZERO, ExactScalar

__all__ = [
    "RootData",
    "CriticalData",
    "field_roots",
    "fixed_points",
    "derivative_and_critical_data",
    "critical_value_polynomial",
]


@dataclass(frozen=True)
class RootData:
    roots: tuple[tuple[ExactScalar, int], ...]
    split: bool

    @property
    def values(self) -> tuple[ExactScalar, ...]:
        return tuple(r for r, _ in self.roots)


@dataclass(frozen=True)
class CriticalData:
    derivative: Polynomial
    points: tuple[ExactScalar, ...]
    values: tuple[ExactScalar, ...]
    split: bool


def _gaussian_integer_scale(Q: Polynomial) -> tuple[list[tuple[int, int]], int]:
    """Coefficients of den*Q as Gaussian integers (re, im), plus den."""
    den = 1
    for c in Q.coeffs:
        for part in (c.re, c.im):
            den = den * part.denominator // math.gcd(den, part.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in Q.coeffs], den


def _roots_numeric(Q: Polynomial) -> list[ExactScalar]:
    ints, _ = _gaussian_integer_scale(Q)
    lead_re, lead_im = ints[-1]
    size = max(max(abs(a), abs(b)) for a, b in ints)
    dps = 30 + 2 * len(str(size)) + Q.degree
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(a, b) for a, b in reversed(ints)]
        approx = None
        for steps in (100, 400, 2000):
            try:
                approx = mpmath.polyroots(coeffs, maxsteps=steps, extraprec=2 * dps)
                break
            except mpmath.libmp.NoConvergence:
                continue
        if approx is None:
            return []
        lead = mpmath.mpc(lead_re, lead_im)
        found = []
        for r in approx:
            # lead * r is integral over Z[i] and lies in Q(i), so it is a
            # Gaussian integer whenever r is a field root.
            s = lead * r
            gr, gi = int(mpmath.nint(s.real)), int(mpmath.nint(s.imag))
            if abs(s.real - gr) > 0.25 or abs(s.imag - gi) > 0.25:
                continue
            cand = ExactScalar(gr, gi) / ExactScalar(lead_re, lead_im)
            if not Q(cand) and cand not in found:
                found.append(cand)
    return found


def _squarefree_roots(Q: Polynomial) -> list[ExactScalar]:
    if Q.degree == 1:
        return [-Q.coeff(0) / Q.coeff(1)]
    if Q.degree == 2:
        a, b, c = Q.coeff(2), Q.coeff(1), Q.coeff(0)
        disc = b * b - a * c * 4
        sq = disc.nth_roots(2)
        if not sq:
            return []
        r = sq[0]
        return [(-b + r) / (a * 2), (-b - r) / (a * 2)]
    return _roots_numeric(Q)


def field_roots(P: Polynomial) -> RootData:
    """All roots of P in Q(i) with multiplicities, sorted, and a split flag."""
    if P.degree < 1:
        raise ValueError("field_roots needs deg P >= 1")
    _, factors = squarefree_decomposition(P)
    out = []
    total = 0
    for mult, Q in enumerate(factors, start=1):
        if Q.degree < 1:
            continue
        for r in _squarefree_roots(Q):
            out.append((r, mult))
            total += mult
    out.sort(key=lambda rm: rm[0].sort_key())
    return RootData(tuple(out), total == P.degree)


def fixed_points(P: Polynomial) -> RootData:
    return field_roots(P - Z)


def derivative_and_critical_data(P: Polynomial) -> CriticalData:
    if P.degree < 2:
        raise ValueError("critical data needs deg P >= 2")
    dP = P.derivative()
    data = field_roots(dP)
    points = data.values
    values = tuple(sorted({P(p) for p in points}, key=ExactScalar.sort_key))
    return CriticalData(dP, points, values, data.split)


def deflate(P: Polynomial, root: ExactScalar) -> Polynomial:
    q, r = poly_divmod(P, Polynomial([-root, 1]))
    if r:
        raise ValueError("not a root")
    return q



def _char_poly(M: list[list[ExactScalar]]) -> Polynomial:
    # Faddeev-LeVerrier; exact since the field has characteristic zero.
    m = len(M)
    coeffs = [ZERO] * m + [ONE]
    Mk = [[ZERO] * m for _ in range(m)]
    for k in range(1, m + 1):
        prod = [[sum((M[i][t] * Mk[t][j] for t in range(m)), ZERO) for j in range(m)] for i in range(m)]
        c_prev = coeffs[m - k + 1]
        for i in range(m):
            prod[i][i] = prod[i][i] + c_prev
        Mk = prod
        MMk = sum((sum((M[i][t] * Mk[t][i] for t in range(m)), ZERO) for i in range(m)), ZERO)
        coeffs[m - k] = -MMk / k
    return Polynomial(coeffs)


def critical_value_polynomial(P: Polynomial) -> Polynomial:
    """Monic polynomial whose roots are P(c) over the roots c of P', with multiplicity.

    It is the characteristic polynomial of multiplication by P on
    Q(i)[z]/(P'), so its field roots include critical values attained only
    at critical points outside the field.
    """
    if P.degree < 2:
        raise ValueError("critical values need deg P >= 2")
    dP = P.derivative()
    m = dP.degree
    if m == 0:
        return Polynomial([ONE])
    cols = []
    base = poly_divmod(P, dP)[1]
    for j in range(m):
        col = poly_divmod(base * Polynomial.monomial(j), dP)[1]
        cols.append([col.coeff(i) for i in range(m)])
    M = [[cols[j][i] for j in range(m)] for i in range(m)]
    return _char_poly(M)
