"""Solving and enumerating semiconjugacies ``A o X == X o B``.

For non-special B every semiconjugacy from B is, up to an affine map on the
left and iterates of B on the right, ``(W - p)**l`` where W is a right
factor of some iterate of B, l < n is coprime to n = deg B and p is a fixed
point of the polynomial that W semiconjugates B to.  The depth of the
iterate is bounded by ``ceil(2*log2(n)) + 3``, which makes the search finite.

Everything returned is verified by exact composition.  Searches that could
not look at every candidate say so instead of guessing.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator

from .decompose import (
    compositional_join,
    kozen_landau_candidate,
    left_quotient,
    power_system_solutions,
    right_quotient,
)
from .errors import (
    BoundViolation,
    BudgetExceeded,
    ConsistencyFailure,
    FieldObstruction,
    NotAnIterateSplit,
    NotInE,
    SpecialInput,
)
from .poly_core import (
    AffineMap,
    ExactScalar,
    Polynomial,
    Z,
    compose,
    field_roots,
    gcd,
    iterate,
)
from .poly_core.scalar import ONE, ZERO
from .poly_core import modular
from .special_forms import (
    CHEBYSHEV_MINUS,
    CHEBYSHEV_PLUS,
    NOT_SPECIAL,
    POWER,
    center,
    classify_special,
    symmetry_order,
    SymmetryProfile,
)

log = logging.getLogger(__name__)

__all__ = [
    "SemiconjugacyWitness",
    "SearchBudget",
    "EnumerationResult",
    "CommutantStructure",
    "CommutingElement",
    "IterateSplit",
    "Equivalence",
    "UniversalPair",
    "RegistryEntry",
    "solve_A",
    "solve_B",
    "is_semiconjugacy",
    "conjugating_maps",
    "iter_E",
    "enumerate_E",
    "factor_through_minimal",
    "commutant",
    "strip_iterate",
    "are_equivalent",
    "universal_pair",
    "depth_bound",
    "universal_degree_bound",
]


@dataclass(frozen=True)
class SemiconjugacyWitness:
    A: Polynomial
    X: Polynomial
    B: Polynomial

    def __post_init__(self):
        if self.A.degree != self.B.degree or self.X.degree < 1:
            raise ValueError("witness needs deg A == deg B and deg X >= 1")
        if compose(self.A, self.X) != compose(self.X, self.B):
            raise ValueError("A o X != X o B")


def is_semiconjugacy(A: Polynomial, X: Polynomial, B: Polynomial) -> bool:
    return compose(A, X) == compose(X, B)


def solve_A(X: Polynomial, B: Polynomial) -> SemiconjugacyWitness | None:
    """The A with ``A o X == X o B``, if there is one."""
    if X.degree < 1 or B.degree < 2:
        raise ValueError("solve_A needs deg X >= 1 and deg B >= 2")
    if X.degree * B.degree >= 24 and not modular.semiconjugacy_possible(X, B):
        return None
    A = left_quotient(compose(X, B), X)
    if A is None:
        return None
    return SemiconjugacyWitness(A, X, B)


def solve_B(A: Polynomial, X: Polynomial) -> SemiconjugacyWitness | None:
    """The B with ``A o X == X o B``, if there is one over Q(i).

    Raises FieldObstruction if B exists only over C.
    """
    if X.degree < 1 or A.degree < 2:
        raise ValueError("solve_B needs deg X >= 1 and deg A >= 2")
    B = right_quotient(compose(A, X), X)
    if B is None:
        return None
    return SemiconjugacyWitness(A, X, B)


# -- conjugacy ----------------------------------------------------------------
def conjugating_maps(P: Polynomial, Q: Polynomial) -> tuple[bool, list[AffineMap]]:
    """Affine mu with ``mu o P o mu^-1 == Q``: (exists over C, those in Q(i)).

    After centering both sides the conjugacy must be a pure scaling a*z,
    and a*Pc(z/a) == Qc(z) asks a**(k-1) == p_k / q_k for each k.
    """
    if P.degree != Q.degree or P.degree < 2:
        return False, []
    sP, Pc = center(P)
    sQ, Qc = center(Q)
    constraints = []
    for k in range(P.degree + 1):
        p, q = Pc.coeff(k), Qc.coeff(k)
        if bool(p) != bool(q):
            return False, []
        if p:
            constraints.append((k - 1, p / q))
    exists, scales = power_system_solutions(constraints)
    scales.sort(key=lambda a: (a != ONE, a.sort_key()))
    maps = [AffineMap(a, sQ - a * sP) for a in scales]
    for mu in maps:
        if compose(compose(mu.as_polynomial(), P), mu.inverse().as_polynomial()) != Q:
            raise ConsistencyFailure("conjugating map failed verification")
    return exists, maps


# -- search budget ------------------------------------------------------------
def depth_bound(n: int) -> int:
    """ceil(2 * log2(n)) + 3, computed in integers."""
    return (n * n - 1).bit_length() + 3


def universal_degree_bound(n: int) -> float:
    return math.factorial(n - 1) * n ** (2 * math.log2(n) + 3)


DEFAULT_SEARCH_DEGREE_CAP = 1024


@dataclass(frozen=True)
class SearchBudget:
    """How far an enumeration of E(B) looks.

    ``depth`` bounds the iterate of B whose right factors are tried,
    ``exponents`` are the admissible powers l, and right factors of
    degree above ``degree_cap`` are skipped (making the search incomplete).
    """

    n: int
    depth: int
    exponents: tuple[int, ...]
    degree_cap: int = DEFAULT_SEARCH_DEGREE_CAP

    @classmethod
    def for_degree(cls, n: int, depth: int | None = None, degree_cap: int | None = None) -> "SearchBudget":
        if n < 2:
            raise ValueError("budget needs n >= 2")
        exps = tuple(l for l in range(1, n) if math.gcd(l, n) == 1)
        return cls(
            n,
            depth_bound(n) if depth is None else depth,
            exps,
            DEFAULT_SEARCH_DEGREE_CAP if degree_cap is None else degree_cap,
        )


def _require_non_special(*polys: Polynomial) -> None:
    for P in polys:
        kind = classify_special(P).kind
        if kind != NOT_SPECIAL:
            raise SpecialInput(f"{P} is special ({kind})")


# -- enumeration ------------------------------------------------------------------
def _iterate_head(B: Polynomial, d: int, k: int) -> list[ExactScalar]:
    """Coefficients of z**(N-j), j < k, of the monic multiple of B^d (N = n^d).

    Works in the reversed variable t = 1/z modulo t**k, so the iterate is
    never expanded in full.
    """
    n = B.degree
    rev = Polynomial([ONE])  # reversal of z
    m = 1
    for _ in range(d):
        acc = Polynomial([B.lead])
        for i in range(n - 1, -1, -1):
            acc = Polynomial((acc * rev).coeffs[:k])
            shift = m * (n - i)
            if B.coeff(i) and shift < k:
                acc = acc + Polynomial.monomial(shift, B.coeff(i))
        rev = acc
        m *= n
    inv = rev.coeff(0).inverse()
    return [rev.coeff(j) * inv for j in range(k)]


def _divisors(N: int) -> list[int]:
    small = [q for q in range(1, math.isqrt(N) + 1) if N % q == 0]
    return sorted(set(small) | {N // q for q in small})


@dataclass
class EnumerationResult:
    witnesses: list[SemiconjugacyWitness]
    # False when candidates were skipped (degree cap) or needed fixed
    # points outside Q(i); E(B) over C may then contain more classes.
    complete: bool = True
    notes: list[str] = field(default_factory=list)


def _translation_candidates(C: Polynomial, l: int, state: EnumerationResult, what: str) -> tuple[ExactScalar, ...]:
    """Points p for which C(z + p) - p has support in n + l*Z (n = deg C).

    These are exactly the p making (W - p)**l a semiconjugacy, given that
    W semiconjugates B to C.  Each coefficient of C(z + p) - p is a
    polynomial in p, so the admissible p are the roots of a gcd.
    """
    n = C.degree
    g = None
    for k in range(n + 1):
        if (k - n) % l == 0:
            continue
        coeffs = [C.coeff(i) * math.comb(i, k) for i in range(k, n + 1)]
        cp = Polynomial(coeffs)
        if k == 0:
            cp = cp - Z
        if cp.is_zero():
            continue
        g = cp if g is None else gcd(g, cp)
        if g.degree == 0:
            return ()
    if g is None:
        raise ConsistencyFailure(f"{C} has no constrained coefficient")
    data = field_roots(g)
    if not data.split:
        state.complete = False
        state.notes.append(f"{what}: translations outside Q(i) skipped")
        log.info("non-field translation points skipped for %s", what)
    return data.values


def iter_E(B: Polynomial, budget: SearchBudget | None = None,
           state: EnumerationResult | None = None) -> Iterator[SemiconjugacyWitness]:
    """Lazily yield representatives of E(B) by nondecreasing iterate depth.

    Yields the trivial witness X = z first and the normalized B once; all
    other representatives are not polynomials in B.  ``state`` (if given)
    records whether the search was exhaustive.
    """
    n = B.degree
    budget = budget or SearchBudget.for_degree(n)
    state = state if state is not None else EnumerationResult([])
    seen: set = set()

    def emit(X: Polynomial):
        key = X.normalized()
        if key in seen:
            return None
        w = solve_A(key, B)
        if w is None:
            return None
        seen.add(key)
        return w

    if budget.depth < depth_bound(n):
        state.complete = False
        state.notes.append(f"depth {budget.depth} below the bound {depth_bound(n)}")
    base = emit(Z)
    if base is not None:
        yield base
    nb = emit(B)
    if nb is not None:
        yield nb
    previous = 1
    for d in range(0, budget.depth + 1):
        level = n ** d
        for b in _divisors(level):
            if d and (previous % b == 0 or b % n == 0):
                continue
            if b > budget.degree_cap:
                state.complete = False
                state.notes.append(f"right factor of degree {b} of B^{d} skipped (cap)")
                continue
            if b == 1:
                W = Z
            else:
                if not modular.candidate_semiconjugates(B, d, level, b):
                    continue
                W = kozen_landau_candidate(_iterate_head(B, d, b), level, b)
            wit = solve_A(W, B)
            if wit is None:
                continue
            if b > 1:
                got = emit(W)
                if got is not None:
                    yield got
            for l in budget.exponents:
                if l == 1:
                    continue
                for p in _translation_candidates(wit.A, l, state, f"l={l}, deg W={b}"):
                    got = emit(compose(Polynomial([-p, ONE]) ** l, W))
                    if got is not None:
                        yield got
        previous = level


def enumerate_E(B: Polynomial, budget: SearchBudget | None = None, strict: bool = True) -> EnumerationResult:
    """All representatives of E(B) within the budget, sorted by degree.

    With ``strict`` a degree-capped search raises BudgetExceeded rather than
    returning a partial answer.
    """
    if B.degree < 2:
        raise ValueError("enumeration needs deg B >= 2")
    _require_non_special(B)
    state = EnumerationResult([])
    wits = list(iter_E(B, budget, state))
    if strict and any("cap" in note for note in state.notes):
        raise BudgetExceeded("; ".join(state.notes))
    for w in wits:
        if not is_semiconjugacy(w.A, w.X, w.B):
            raise ConsistencyFailure("enumerated witness failed verification")
    state.witnesses = sorted(wits, key=lambda w: w.X.sort_key())
    return state


def factor_through_minimal(A: Polynomial, B: Polynomial, witnesses: list[Polynomial]) -> tuple[Polynomial, list[Polynomial]]:
    """X0 of least degree among the witnesses and the factors A' with X = A' o X0.

    Each A' is checked to commute with A.
    """
    if not witnesses:
        raise ValueError("need at least one witness")
    _require_non_special(A, B)
    for X in witnesses:
        if not is_semiconjugacy(A, X, B):
            raise NotInE(f"{X} is not a semiconjugacy from {B} to {A}")
    X0 = min(witnesses, key=lambda X: X.sort_key())
    factors = []
    for X in witnesses:
        At = left_quotient(X, X0) if X.degree % X0.degree == 0 else None
        if At is None or compose(At, A) != compose(A, At):
            raise ConsistencyFailure(f"{X} does not factor through {X0}")
        factors.append(At)
    return X0, factors


# -- commutant ----------------------------------------------------------------------
@dataclass(frozen=True)
class CommutingElement:
    element: Polynomial
    symmetry: AffineMap
    power: int  # element == symmetry o R^power


@dataclass(frozen=True)
class CommutantStructure:
    R: Polynomial
    symmetry: SymmetryProfile
    B_form: CommutingElement
    elements: tuple[CommutingElement, ...]


def _express(E: Polynomial, R: Polynomial) -> CommutingElement:
    rest, m = E, 0
    while rest.degree > 1:
        nxt = left_quotient(rest, R) if rest.degree % R.degree == 0 else None
        if nxt is None:
            raise ConsistencyFailure(f"{E} is not a power of {R} up to symmetry")
        rest, m = nxt, m + 1
    return CommutingElement(E, AffineMap.from_polynomial(rest), m)


def commutant(B: Polynomial, degree_cap: int = 64, budget: SearchBudget | None = None) -> CommutantStructure:
    """Polynomials commuting with B up to ``degree_cap``, written as eps o R^m."""
    _require_non_special(B)
    found: dict[Polynomial, None] = {}
    result = EnumerationResult([])
    for wit in iter_E(B, budget, result):
        exists, maps = conjugating_maps(wit.A, B)
        for mu in maps:
            X = mu(wit.X)
            while X.degree <= degree_cap:
                found.setdefault(X)
                X = compose(X, B)
    elems = sorted(found, key=Polynomial.sort_key)
    for E in elems:
        if compose(E, B) != compose(B, E):
            raise ConsistencyFailure("commuting element failed verification")
    low = min(E.degree for E in elems if E.degree >= 2)
    R = min((E for E in elems if E.degree == low), key=lambda E: (E.lead != ONE, E.sort_key()))
    reps = tuple(_express(E, R) for E in elems)
    return CommutantStructure(R, symmetry_order(R), _express(B, R), reps)


# -- iterate splits ---------------------------------------------------------------------
@dataclass(frozen=True)
class IterateSplit:
    Y: Polynomial
    X: Polynomial
    i: int  # Y == B^i o Y_reduced
    j: int  # X == X_reduced o B^j
    s: int  # Y_reduced o X_reduced == B^s


def strip_iterate(Y: Polynomial, X: Polynomial, B: Polynomial, s: int) -> IterateSplit:
    """Strip iterates of B from the outside of ``Y o X == B^s``."""
    if compose(Y, X) != iterate(B, s):
        raise NotAnIterateSplit(f"Y o X is not B^{s}")
    _require_non_special(B)
    n = B.degree
    j = 0
    while X.degree >= n and X.degree % n == 0:
        nxt = left_quotient(X, B)
        if nxt is None:
            break
        X, j = nxt, j + 1
    i = 0
    while Y.degree >= n and Y.degree % n == 0:
        try:
            nxt = right_quotient(Y, B)
        except FieldObstruction:
            nxt = None
        if nxt is None:
            break
        Y, i = nxt, i + 1
    rest = s - i - j
    if compose(Y, X) != iterate(B, rest):
        raise ConsistencyFailure("stripped split does not recompose")
    if rest > depth_bound(n):
        raise BoundViolation(f"reduced split needs B^{rest}, above {depth_bound(n)}")
    return IterateSplit(Y, X, i, j, rest)


# -- equivalence -------------------------------------------------------------------------
@dataclass(frozen=True)
class Equivalence:
    # True / False, or None when the budget ran out before a decision.
    result: bool | None
    conjugacy: AffineMap | None = None  # mu with mu o A o mu^-1 == B
    X: Polynomial | None = None          # A o X == X o B
    Y: Polynomial | None = None          # B o Y == Y o A
    certificate: tuple[Polynomial, int] | None = None  # (X', d) with Y o X' == B^d
    reason: str = ""


def _special_kind(P: Polynomial) -> str:
    kind = classify_special(P).kind
    if kind == CHEBYSHEV_MINUS and P.degree % 2 == 0:
        return CHEBYSHEV_PLUS
    return kind


def _search_le(A: Polynomial, B: Polynomial, budget: SearchBudget | None) -> tuple[bool | None, Polynomial | None]:
    """Whether A <= B (None if the search was cut short), with a witness X
    satisfying A o X == X o B when one exists over Q(i)."""
    state = EnumerationResult([])
    for wit in iter_E(B, budget, state):
        exists, maps = conjugating_maps(wit.A, A)
        if not exists:
            continue
        if maps:
            X = maps[0](wit.X)
            if not is_semiconjugacy(A, X, B):
                raise ConsistencyFailure("transported witness failed verification")
            return True, X
        # Conjugate over C only: A <= B holds but the witness is not in Q(i).
        return True, None
    return (False if state.complete else None), None


def _certificate(X: Polynomial, Y: Polynomial, B: Polynomial, max_depth: int) -> tuple[Polynomial, int] | None:
    YX = compose(Y, X)
    n = B.degree
    for d in range(1, max_depth + 1):
        if n ** d % YX.degree:
            continue
        Bd = iterate(B, d)
        try:
            V = right_quotient(Bd, YX)
        except FieldObstruction:
            continue
        if V is not None and compose(V, B) == compose(B, V):
            Xt = compose(X, V)
            if compose(Y, Xt) == Bd:
                return Xt, d
    return None


def are_equivalent(A: Polynomial, B: Polynomial, budget: SearchBudget | None = None) -> Equivalence:
    """Decide whether A and B are related by the equivalence generated by
    ``U o V ~ V o U``, which holds iff each is semiconjugate to the other.
    """
    if A.degree != B.degree:
        return Equivalence(False, reason="degrees differ")
    if A.degree < 2:
        raise ValueError("equivalence needs degree >= 2")
    exists, maps = conjugating_maps(A, B)
    if exists:
        return Equivalence(True, maps[0] if maps else None, reason="conjugate")
    kA, kB = _special_kind(A), _special_kind(B)
    if kA != NOT_SPECIAL or kB != NOT_SPECIAL:
        # Among special polynomials equivalence is conjugacy, and special
        # polynomials are only semiconjugate to special ones.
        return Equivalence(False, reason=f"special classes {kA} / {kB} not conjugate")
    ab, X = _search_le(A, B, budget)
    if ab is False:
        return Equivalence(False, reason="A is not semiconjugate to B")
    if ab is None:
        return Equivalence(None, reason="search for A <= B incomplete")
    ba, Y = _search_le(B, A, budget)
    if ba is False:
        return Equivalence(False, X=X, reason="B is not semiconjugate to A")
    if ba is None:
        return Equivalence(None, X=X, reason="search for B <= A incomplete")
    if X is None or Y is None:
        return Equivalence(True, None, X, Y, reason="mutual semiconjugacy over C; a witness needs roots outside Q(i)")
    cert = _certificate(X, Y, B, depth_bound(B.degree) + 2)
    return Equivalence(True, None, X, Y, cert, reason="mutual semiconjugacy")


# -- universal pair ----------------------------------------------------------------------------
@dataclass(frozen=True)
class RegistryEntry:
    C: Polynomial
    X_C: Polynomial
    U_C: Polynomial


@dataclass(frozen=True)
class UniversalPair:
    A: Polynomial
    X: Polynomial
    B: Polynomial
    registry: tuple[RegistryEntry, ...]
    bound: float


def universal_pair(B: Polynomial, budget: SearchBudget | None = None) -> UniversalPair:
    """One (A, X) with A o X == X o B through which every enumerated
    semiconjugacy from B factors: X == U_C o X_C and A o U_C == U_C o C.
    """
    wits = enumerate_E(B, budget).witnesses
    X = Z
    for w in wits:
        if X.degree % w.X.degree == 0 and left_quotient(X, w.X) is not None:
            continue
        joined = compositional_join(X, w.X)
        if joined is None:
            raise ConsistencyFailure(f"no join of {X} and {w.X}")
        X = compose(joined[0], X)
    top = solve_A(X, B)
    if top is None:
        raise ConsistencyFailure("joined polynomial is not a semiconjugacy")
    A = top.A
    registry = []
    for w in wits:
        U = left_quotient(X, w.X)
        if U is None or compose(A, U) != compose(U, w.A) or compose(w.A, w.X) != compose(w.X, B):
            raise ConsistencyFailure(f"registry entry for {w.X} does not commute")
        registry.append(RegistryEntry(w.A, w.X, U))
    bound = universal_degree_bound(B.degree)
    if X.degree > bound * (1 + 1e-12):
        raise BoundViolation(f"deg X = {X.degree} exceeds {bound}")
    return UniversalPair(A, X, B, tuple(registry), bound)
