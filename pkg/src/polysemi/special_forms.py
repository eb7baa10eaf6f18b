"""Chebyshev polynomials and recognition of the special classes.

A polynomial of degree n is *special* when it is affinely conjugate to z**n
or to +-T_n.  Both tests here are exact decisions over C even though all
arithmetic stays in Q(i): conjugating by a translation to kill the z**(n-1)
term leaves only a scaling a*z to determine, and the coefficient pattern
pins down a**2 rationally.  Whether the scaling itself lies in Q(i) only
affects which witnesses can be returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyFailure
from .poly_core import (
    AffineMap,
    ExactScalar,
    Polynomial,
    Z,
    compose,
    critical_value_polynomial,
    field_roots,
    fixed_points,
    odd_part,
)
from .poly_core.scalar import ONE, ZERO, I

__all__ = [
    "POWER",
    "CHEBYSHEV_PLUS",
    "CHEBYSHEV_MINUS",
    "NOT_SPECIAL",
    "UNDECIDED_FIELD",
    "SpecialClassification",
    "SymmetryProfile",
    "chebyshev",
    "chebyshev_explicit",
    "classify_special",
    "is_special",
    "k_pairs_by_odd_part",
    "center",
    "symmetry_order",
]

POWER = "power"
CHEBYSHEV_PLUS = "chebyshev-plus"
CHEBYSHEV_MINUS = "chebyshev-minus"
NOT_SPECIAL = "not-special"
UNDECIDED_FIELD = "undecided-field"


@lru_cache(maxsize=None)
def chebyshev(n: int) -> Polynomial:
    """T_n from T_{k+1} = 2z T_k - T_{k-1}."""
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    prev, cur = Polynomial([1]), Z
    if n == 0:
        return prev
    two_z = Z * 2
    for _ in range(n - 1):
        prev, cur = cur, two_z * cur - prev
    return cur


def chebyshev_explicit(n: int) -> Polynomial:
    """T_n from its closed-form coefficient sum (independent of the recurrence)."""
    if n == 0:
        return Polynomial([1])
    coeffs = [ZERO] * (n + 1)
    for k in range(n // 2 + 1):
        c = Fraction(n, 2) * (-1) ** k * math.factorial(n - k - 1)
        c /= math.factorial(k) * math.factorial(n - 2 * k)
        coeffs[n - 2 * k] = ExactScalar(c * 2 ** (n - 2 * k))
    return Polynomial(coeffs)


@dataclass(frozen=True)
class SpecialClassification:
    kind: str
    # lam with lam^-1 o P o lam equal to ``normal_form``; None if lam is not in Q(i).
    witness: AffineMap | None = None
    normal_form: Polynomial | None = None
    # The two-point exceptional set, when both points lie in Q(i) ...
    K: tuple[ExactScalar, ExactScalar] | None = None
    # ... and the monic quadratic vanishing on it, which always does.
    K_polynomial: Polynomial | None = None

    @property
    def special(self) -> bool:
        return self.kind != NOT_SPECIAL


def center(P: Polynomial) -> tuple[ExactScalar, Polynomial]:
    """(s, Q) with Q = P(z + s) - s free of its z**(n-1) term."""
    n = P.degree
    s = -P.coeff(n - 1) / (P.lead * n)
    if not s:
        return s, P
    return s, compose(P, Polynomial([s, ONE])) - s


def _power_test(P: Polynomial) -> SpecialClassification | None:
    n = P.degree
    b, Q = center(P)
    # Conjugate to z**n iff the translate is a pure monomial.
    if any(Q.coeff(k) for k in range(n)):
        return None
    lam = AffineMap(ONE, b)
    return SpecialClassification(POWER, lam, Polynomial.monomial(n, P.lead))


def _chebyshev_test(P: Polynomial) -> SpecialClassification | None:
    n = P.degree
    c, Q = center(P)
    T = chebyshev(n)
    if Q.support() != T.support():
        return None
    tn, qn = T.lead, Q.lead
    # Q(w) = sign * a * T_n(w / a) forces q_k / q_n = (t_k / t_n) * (a**2)**((n-k)/2).
    a2 = Q.coeff(n - 2) * tn / (qn * T.coeff(n - 2))
    for k in T.support():
        if Q.coeff(k) / qn != T.coeff(k) / tn * a2 ** ((n - k) // 2):
            return None
    if n % 2:
        sign = qn * a2 ** ((n - 1) // 2) / tn
        if sign == ONE:
            kind = CHEBYSHEV_PLUS
        elif sign == -ONE:
            kind = CHEBYSHEV_MINUS
        else:
            return None
        roots = a2.nth_roots(2)
        a = roots[-1] if roots else None
    else:
        if (qn * a2 ** (n // 2) / tn) ** 2 != a2:
            return None
        kind = CHEBYSHEV_PLUS
        a = tn / (qn * a2 ** ((n - 2) // 2))
    normal = chebyshev(n) if kind == CHEBYSHEV_PLUS else -chebyshev(n)
    K_poly = Polynomial([c * c - a2, -c * 2, ONE])
    if a is None:
        return SpecialClassification(kind, None, normal, None, K_poly)
    lam = AffineMap(a, c)
    K = tuple(sorted((c - a, c + a), key=ExactScalar.sort_key))
    return SpecialClassification(kind, lam, normal, K, K_poly)


def classify_special(P: Polynomial) -> SpecialClassification:
    """Decide whether P is conjugate to z**n, T_n or -T_n."""
    if P.degree < 2:
        raise ValueError("classification needs deg P >= 2")
    found = _power_test(P) or _chebyshev_test(P)
    if found is None:
        return SpecialClassification(NOT_SPECIAL)
    if found.witness is not None:
        lam = found.witness
        if compose(compose(lam.inverse().as_polynomial(), P), lam.as_polynomial()) != found.normal_form:
            raise ConsistencyFailure(f"special witness for {P} failed verification")
    if found.K is not None:
        a, b = found.K
        if odd_part((P - a) * (P - b)) != found.K_polynomial:
            raise ConsistencyFailure(f"exceptional pair for {P} failed verification")
    return found


def is_special(P: Polynomial) -> bool:
    return classify_special(P).kind != NOT_SPECIAL


def k_pairs_by_odd_part(P: Polynomial) -> list[tuple[ExactScalar, ExactScalar]]:
    """Pairs {a, b} of field critical values and fixed points with
    ``odd_part((P - a)(P - b)) == (z - a)(z - b)``.

    This is the critical-value characterization of the Chebyshev class,
    kept as a second route to compare against :func:`classify_special`.
    """
    crit = field_roots(critical_value_polynomial(P)).values if P.degree > 1 else ()
    fixed = fixed_points(P).values
    cands = sorted(set(crit) | set(fixed), key=ExactScalar.sort_key)
    out = []
    for i, a in enumerate(cands):
        for b in cands[i + 1:]:
            target = Polynomial([a * b, -(a + b), ONE])
            if odd_part((P - a) * (P - b)) == target:
                out.append((a, b))
    return out


@dataclass(frozen=True)
class SymmetryProfile:
    ell: int
    center: ExactScalar
    centered: Polynomial
    # Roots of unity eps in Q(i) with centered(eps*z) == eps*centered(z).
    field_symmetries: tuple[ExactScalar, ...]


def symmetry_order(P: Polynomial) -> SymmetryProfile:
    """Largest ell with the centered conjugate of P of the shape z*S(z**ell)."""
    if P.degree < 2:
        raise ValueError("symmetry needs deg P >= 2")
    s, Q = center(P)
    ell = 0
    for k in Q.support():
        ell = math.gcd(ell, abs(k - 1))
    syms = []
    for eps in (ONE, -ONE, I, -I):
        if ell % _order(eps) == 0:
            lhs = compose(Q, Polynomial([ZERO, eps]))
            if lhs != Q * eps:
                raise ConsistencyFailure(f"support pattern promised symmetry {eps} for {P}")
            syms.append(eps)
    return SymmetryProfile(ell, s, Q, tuple(syms))


def _order(eps: ExactScalar) -> int:
    return {ONE: 1, -ONE: 2}.get(eps, 4)
