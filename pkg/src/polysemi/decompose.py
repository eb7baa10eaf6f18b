"""Compositional factorization of polynomials.

Right factors are found with the reversed-power-series root of Kozen and
Landau: if ``P = G o H`` with H monic of degree d, the top d coefficients of
P/lead(P) determine H up to its constant term.  Every candidate is confirmed
by an exact left quotient, so nothing returned here is approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyFailure, DegreeMismatch, FieldObstruction, InvalidParameters, NotEqualComposite
from .poly_core import (
    AffineMap,
    ExactScalar,
    Polynomial,
    Z,
    adic_expansion,
    compose,
    nullspace,
)
from .poly_core.scalar import ONE, ZERO
from .poly_core import modular

__all__ = [
    "FactorPair",
    "EngstromReduction",
    "RittMoveForm",
    "RittMoveResult",
    "JoinMeet",
    "left_quotient",
    "right_quotient",
    "right_factor_of_degree",
    "engstrom_reduce",
    "ritt_move",
    "compositional_join",
    "join_meet",
    "scaling_solutions",
    "power_system_solutions",
    "affine_solutions",
    "kozen_landau_candidate",
]


@dataclass(frozen=True)
class FactorPair:
    left: Polynomial
    right: Polynomial

    def composite(self) -> Polynomial:
        return compose(self.left, self.right)


# -- quotients ---------------------------------------------------------------
# Above this degree a cheap modular image screens out most non-quotients.
_MODULAR_THRESHOLD = 24


def left_quotient(P: Polynomial, H: Polynomial) -> Polynomial | None:
    """The unique G with ``G o H == P``, or None."""
    if H.degree < 1:
        raise ValueError("right factor must have degree >= 1")
    if P.degree > 0 and P.degree % H.degree:
        raise DegreeMismatch(f"deg H = {H.degree} does not divide deg P = {P.degree}")
    if P.degree <= 0:
        return P
    if P.degree >= _MODULAR_THRESHOLD and not modular.left_quotient_possible(P, H):
        return None
    digits = adic_expansion(P, H).digits
    if any(d.degree > 0 for d in digits):
        return None
    return Polynomial(d.coeff(0) for d in digits)


def _series_root(q: list[ExactScalar], r: int, terms: int) -> list[ExactScalar]:
    """First ``terms`` coefficients of q(t)**(1/r) for q(0) = 1."""
    alpha = Fraction(1, r)
    a = [ONE]
    for k in range(1, terms):
        acc = ZERO
        for j in range(1, min(k, len(q) - 1) + 1):
            if q[j]:
                acc = acc + q[j] * a[k - j] * ((alpha + 1) * j - k)
        a.append(acc / k)
    return a


def kozen_landau_candidate(head: list[ExactScalar], n: int, d: int) -> Polynomial:
    """The only monic H with H(0) = 0 and deg H = d that can be a right factor.

    ``head[j]`` is the coefficient of z**(n-j) in the monic composite, for
    j < d; no other coefficient matters.
    """
    a = _series_root(head, n // d, d)
    # a[k] is the coefficient of z**(d-k) in H.
    return Polynomial([ZERO] + [a[d - i] for i in range(1, d)] + [ONE])


def right_factor_of_degree(P: Polynomial, d: int) -> FactorPair | None:
    """The decomposition ``P = G o H`` with deg H = d and H monic, H(0) = 0.

    Right factors of a fixed degree form one orbit under left composition
    with affine maps, so this representative is unique when it exists.
    """
    n = P.degree
    if d < 1:
        raise ValueError("factor degree must be positive")
    if n < 1 or n % d:
        raise DegreeMismatch(f"{d} does not divide deg P = {n}")
    if d == n:
        H = P.normalized()
        return FactorPair(AffineMap(P.lead, P.coeff(0)).as_polynomial(), H)
    if d == 1:
        return FactorPair(P, Z)
    inv = P.lead.inverse()
    H = kozen_landau_candidate([P.coeff(n - j) * inv for j in range(d)], n, d)
    G = left_quotient(P, H)
    if G is None:
        return None
    return FactorPair(G, H)


def power_system_solutions(constraints: list[tuple[int, ExactScalar]]) -> tuple[bool, list[ExactScalar]]:
    """Solve ``a**e == v`` for every (e, v) simultaneously, a != 0.

    Returns whether a complex solution exists and the solutions in Q(i).
    The constraints are combined by Bezout into a single ``a**g == w``.
    """
    g, w = 0, ONE
    normalized = []
    for e, v in constraints:
        if e < 0:
            e, v = -e, v.inverse()
        if e == 0:
            if v != ONE:
                return False, []
            continue
        normalized.append((e, v))
        if g == 0:
            g, w = e, v
            continue
        h, x, y = _ext_gcd(g, e)
        w = (w ** x) * (v ** y)
        g = h
    if g == 0:
        raise ValueError("constraints leave a unconstrained")
    for e, v in normalized:
        if v != w ** (e // g):
            return False, []
    return True, w.nth_roots(g)


def scaling_solutions(src: Polynomial, dst: Polynomial) -> tuple[bool, list[ExactScalar]]:
    """Solve ``src(a*z) == dst`` for a != 0: (exists over C, solutions in Q(i))."""
    if src.degree != dst.degree or src.degree < 1:
        return False, []
    constraints = []
    for k in range(src.degree + 1):
        s, t = src.coeff(k), dst.coeff(k)
        if bool(s) != bool(t):
            return False, []
        if s:
            constraints.append((k, t / s))
    return power_system_solutions(constraints)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _centering_shift(P: Polynomial) -> ExactScalar:
    """t with P(z - t) free of its z**(n-1) term."""
    n = P.degree
    return P.coeff(n - 1) / (P.lead * n)


def affine_solutions(G: Polynomial, G0: Polynomial) -> tuple[bool, list[AffineMap]]:
    """All affine maps lam with ``G o lam == G0``: (exists over C, those over Q(i))."""
    tG, t0 = _centering_shift(G), _centering_shift(G0)
    Gc = compose(G, Polynomial([-tG, ONE]))
    G0c = compose(G0, Polynomial([-t0, ONE]))
    exists, scales = scaling_solutions(Gc, G0c)
    # Gc(a*z) = G0c(z) gives lam = a*(z + t0) - tG.  Prefer a = 1.
    scales.sort(key=lambda a: (a != ONE, a.sort_key()))
    maps = [AffineMap(a, a * t0 - tG) for a in scales]
    return exists, maps


def right_quotient(P: Polynomial, G: Polynomial) -> Polynomial | None:
    """Some H with ``G o H == P``; None if there is none even over C.

    Raises FieldObstruction when such H exists over C but not over Q(i).
    """
    if G.degree < 1:
        raise ValueError("left factor must have degree >= 1")
    if P.degree < 1 or P.degree % G.degree:
        raise DegreeMismatch(f"deg G = {G.degree} does not divide deg P = {P.degree}")
    if G.degree == 1:
        return AffineMap.from_polynomial(G).inverse()(P)
    pair = right_factor_of_degree(P, P.degree // G.degree)
    if pair is None:
        return None
    exists, maps = affine_solutions(G, pair.left)
    if not exists:
        return None
    if not maps:
        raise FieldObstruction(
            f"{P} = ({G}) o H needs a scaling outside Q(i)"
        )
    H = maps[0](pair.right)
    if compose(G, H) != P:
        raise ConsistencyFailure("right quotient failed verification")
    return H


# -- Engstrom ------------------------------------------------------------------
@dataclass(frozen=True)
class EngstromReduction:
    U: Polynomial
    A: Polynomial
    D: Polynomial
    C: Polynomial
    B: Polynomial
    V: Polynomial


def engstrom_reduce(A: Polynomial, C: Polynomial, D: Polynomial, B: Polynomial) -> EngstromReduction:
    """Split ``A o C == D o B`` through its largest common outer and inner factors.

    Returns U, V and the reduced tuple with A = U o A', D = U o D',
    C = C' o V, B = B' o V and A' o C' = D' o B'.
    """
    P = compose(A, C)
    if P != compose(D, B):
        raise NotEqualComposite("A o C differs from D o B")
    outer = math.gcd(A.degree, D.degree)
    inner = math.gcd(C.degree, B.degree)
    top = right_factor_of_degree(P, P.degree // outer)
    if top is None:
        raise ConsistencyFailure("common left composite of C and B not found")
    W, U = top.right, top.left
    A_red = left_quotient(W, C)
    D_red = left_quotient(W, B)
    low = right_factor_of_degree(C, inner)
    if A_red is None or D_red is None or low is None:
        raise ConsistencyFailure("Engstrom factors failed to materialize")
    V = low.right
    C_red = low.left
    B_red = left_quotient(B, V)
    if B_red is None:
        raise ConsistencyFailure("inner common factor does not divide B")
    red = EngstromReduction(U, A_red, D_red, C_red, B_red, V)
    checks = (
        compose(U, A_red) == A,
        compose(U, D_red) == D,
        compose(C_red, V) == C,
        compose(B_red, V) == B,
        compose(A_red, C_red) == compose(D_red, B_red),
    )
    if not all(checks):
        raise ConsistencyFailure("Engstrom reduction failed verification")
    return red


# -- Ritt moves ----------------------------------------------------------------
POWER = "power"
CHEBYSHEV = "chebyshev"


@dataclass(frozen=True)
class RittMoveForm:
    """Parameters of one of the two families of solutions of A o C = D o B.

    power:      A = nu o z^s R(z)^n o sigma1^-1,  C = sigma1 o z^n o mu,
                D = nu o z^n o sigma2^-1,         B = sigma2 o z^s R(z^n) o mu
    chebyshev:  A = nu o T_m o sigma1^-1,         C = sigma1 o T_n o mu,
                D = nu o T_n o sigma2^-1,         B = sigma2 o T_m o mu
    """

    family: str
    n: int
    s: int = 0
    R: Polynomial = field(default_factory=lambda: Polynomial([1]))
    m: int = 0
    sigma1: AffineMap = field(default_factory=AffineMap.identity)
    sigma2: AffineMap = field(default_factory=AffineMap.identity)
    mu: AffineMap = field(default_factory=AffineMap.identity)
    nu: AffineMap = field(default_factory=AffineMap.identity)


@dataclass(frozen=True)
class RittMoveResult:
    first: FactorPair   # (A, C)
    second: FactorPair  # (D, B)
    composite: Polynomial
    form: RittMoveForm
    swapped: bool = False


def _validate(form: RittMoveForm) -> None:
    if form.family == POWER:
        if form.n < 1 or form.s < 0:
            raise InvalidParameters("power family needs n >= 1 and s >= 0")
        if math.gcd(form.s, form.n) != 1:
            raise InvalidParameters(f"gcd(s, n) = gcd({form.s}, {form.n}) must be 1")
        if form.R.is_zero():
            raise InvalidParameters("R must be nonzero")
    elif form.family == CHEBYSHEV:
        if form.n < 1 or form.m < 1:
            raise InvalidParameters("Chebyshev family needs m, n >= 1")
        if math.gcd(form.m, form.n) != 1:
            raise InvalidParameters(f"gcd(m, n) = gcd({form.m}, {form.n}) must be 1")
    else:
        raise InvalidParameters(f"unknown family {form.family!r}")


def _materialize(form: RittMoveForm) -> tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    from .special_forms import chebyshev

    s1, s2, mu, nu = (m.as_polynomial() for m in (form.sigma1, form.sigma2, form.mu, form.nu))
    s1i, s2i = form.sigma1.inverse().as_polynomial(), form.sigma2.inverse().as_polynomial()
    if form.family == POWER:
        zs = Polynomial.monomial(form.s)
        zn = Polynomial.monomial(form.n)
        outer = zs * form.R ** form.n
        inner = zs * compose(form.R, zn)
        left_a, right_c, left_d, right_b = outer, zn, zn, inner
    else:
        left_a, right_c = chebyshev(form.m), chebyshev(form.n)
        left_d, right_b = chebyshev(form.n), chebyshev(form.m)
    A = compose(compose(nu, left_a), s1i)
    C = compose(compose(s1, right_c), mu)
    D = compose(compose(nu, left_d), s2i)
    B = compose(compose(s2, right_b), mu)
    return A, C, D, B


def canonical_form(form: RittMoveForm) -> tuple[RittMoveForm, bool]:
    """Rewrite a Chebyshev form containing T_2 in the power family.

    The flag is True when the rewritten form describes (D, B) as its (A, C).
    """
    from .special_forms import chebyshev

    if form.family != CHEBYSHEV or 2 not in (form.m, form.n):
        return form, False
    if form.n == 2:
        odd, s1, s2, swapped = form.m, form.sigma1, form.sigma2, False
    else:
        odd, s1, s2, swapped = form.n, form.sigma2, form.sigma1, True
    # T_2 = ell o z^2 and T_odd o ell = ell o z R(z)^2 with T_odd = z R(z^2).
    ell = AffineMap(2, -1)
    T = chebyshev(odd)
    R = Polynomial(T.coeff(2 * j + 1) for j in range((T.degree - 1) // 2 + 1))
    new = RittMoveForm(
        POWER, n=2, s=1, R=R,
        sigma1=ell.then(s1), sigma2=s2, mu=form.mu, nu=ell.then(form.nu),
    )
    return new, swapped


def ritt_move(form: RittMoveForm) -> RittMoveResult:
    _validate(form)
    canon, swapped = canonical_form(form)
    A, C, D, B = _materialize(form)
    composite = compose(A, C)
    if composite != compose(D, B):
        raise ConsistencyFailure("Ritt move sides differ")
    if canon is not form:
        a2, c2, d2, b2 = _materialize(canon)
        got = ((d2, b2, a2, c2) if swapped else (a2, c2, d2, b2))
        if got != (A, C, D, B):
            raise ConsistencyFailure("power-family rewrite does not reproduce the move")
    return RittMoveResult(FactorPair(A, C), FactorPair(D, B), composite, canon, swapped)


# -- joins and meets -------------------------------------------------------------
def compositional_join(pi: Polynomial, rho: Polynomial) -> tuple[Polynomial, Polynomial] | None:
    """Monic u with u(0) = 0 and v such that ``u o pi == v o rho``, deg u o pi = lcm.

    The coefficients of u are the unknowns; asking every rho-adic digit of
    sum u_i pi**i to be constant is a linear system whose kernel is at most
    one-dimensional.
    """
    p, q = pi.degree, rho.degree
    if p < 1 or q < 1:
        raise ValueError("join needs nonconstant polynomials")
    L = p * q // math.gcd(p, q)
    a = L // p
    ndig = L // q + 1
    columns = []
    power = Polynomial([1])
    for _ in range(a):
        power = power * pi
        digits = list(adic_expansion(power, rho).digits)
        digits += [Polynomial()] * (ndig - len(digits))
        columns.append(digits)
    rows = []
    for k in range(ndig):
        for j in range(1, q):
            rows.append([col[k].coeff(j) for col in columns])
    basis = nullspace(rows, a)
    sol = next((v for v in basis if v[-1]), None)
    if sol is None:
        return None
    inv = sol[-1].inverse()
    u = Polynomial([ZERO] + [c * inv for c in sol])
    S = compose(u, pi)
    v = Polynomial(d.coeff(0) for d in adic_expansion(S, rho).digits)
    if compose(v, rho) != S:
        raise ConsistencyFailure("join failed verification")
    return u, v


@dataclass(frozen=True)
class JoinMeet:
    X: Polynomial
    W: Polynomial
    U1: Polynomial
    U2: Polynomial
    V1: Polynomial
    V2: Polynomial


def join_meet(X1: Polynomial, X2: Polynomial, B: Polynomial) -> JoinMeet:
    """Least common left composite and greatest common right factor of X1, X2 in E(B)."""
    from .errors import NotInE, SpecialInput
    from .semiconj_engine import solve_A
    from .special_forms import NOT_SPECIAL, classify_special

    if classify_special(B).kind != NOT_SPECIAL:
        raise SpecialInput(f"{B} is special")
    for X in (X1, X2):
        if solve_A(X, B) is None:
            raise NotInE(f"{X} is not a semiconjugacy from {B}")
    g = math.gcd(X1.degree, X2.degree)
    low = right_factor_of_degree(X1, g)
    if low is None:
        raise ConsistencyFailure("meet not found")
    W = low.right
    V2 = left_quotient(X2, W)
    if V2 is None:
        raise ConsistencyFailure("meet does not divide the second factor")
    joined = compositional_join(X1, X2)
    if joined is None:
        raise ConsistencyFailure("join not found")
    U1, U2 = joined
    X = compose(U1, X1)
    return JoinMeet(X, W, U1, U2, low.left, V2)
