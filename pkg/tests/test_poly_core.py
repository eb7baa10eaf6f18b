from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from strategies import affine_maps, gaussian, nonzero_gaussian, polynomials, rationals
from polysemi.errors import BudgetExceeded, ParseError
from polysemi.poly_core import (
    ONE,
    ZERO,
    AffineMap,
    ExactScalar,
    I,
    Polynomial,
    Z,
    adic_expansion,
    affine_conjugate,
    compose,
    critical_value_polynomial,
    derivative_and_critical_data,
    field_roots,
    gcd,
    iterate,
    odd_part,
    poly,
    poly_divmod,
    squarefree_decomposition,
)
from polysemi.poly_core import modular
from polysemi.poly_core.polynomial import _kronecker_int, _school_int


# -- scalars -------------------------------------------------------------------
def test_scalar_normal_form():
    c = ExactScalar(Fraction(2, -4), Fraction(3, 6))
    assert c.re == Fraction(-1, 2) and c.re.denominator > 0
    assert c == ExactScalar(Fraction(-1, 2), Fraction(1, 2))
    assert I * I == -ONE


@given(nonzero_gaussian)
def test_scalar_inverse(c):
    assert c * c.inverse() == ONE


@given(gaussian, st.integers(min_value=2, max_value=6))
def test_nth_roots_are_roots(c, n):
    w = c ** n
    roots = w.nth_roots(n)
    assert c in roots
    assert all(r ** n == w for r in roots)
    assert len(set(roots)) == len(roots)


def test_nth_roots_outside_field():
    assert ExactScalar(2).nth_roots(2) == []
    assert set(ExactScalar(-1).nth_roots(2)) == {I, -I}


@given(gaussian)
def test_scalar_json_round_trip(c):
    assert ExactScalar.from_json(c.to_json()) == c


# -- text format ------------------------------------------------------------------
@pytest.mark.parametrize("text, expected", [
    ("4*z^3 - 3*z", [0, -3, 0, 4]),
    ("(z-1)^2", [1, -2, 1]),
    ("z(z+1)^2", [0, 1, 2, 1]),
    ("2z**2 + i*z", [0, I, 2]),
    ("z/2 + 1/3", [Fraction(1, 3), Fraction(1, 2)]),
])
def test_parse(text, expected):
    assert poly(text) == Polynomial(expected)


@pytest.mark.parametrize("text", ["z^", "z^2 +", "(z", "y^2", "z/z", "z^-1", "2 $ z"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        poly(text)


def test_canonical_output():
    assert str(poly("z - 3*z^3*4 + 3*z")) == "-12*z^3 + 4*z"
    assert str(Polynomial([ExactScalar(Fraction(1, 2), Fraction(-3, 4)), 0, -1])) == "-z^2 + (1/2-3/4*i)"
    assert str(Polynomial([0, I])) == "(i)*z"
    assert str(Polynomial()) == "0"


@given(polynomials(max_degree=6))
def test_text_round_trip(P):
    assert poly(str(P)) == P


@given(polynomials(max_degree=6))
def test_json_round_trip(P):
    assert Polynomial.from_json(P.to_json()) == P


# -- arithmetic ---------------------------------------------------------------------
@given(polynomials(max_degree=5), polynomials(max_degree=5))
def test_product_matches_sympy(P, Q):
    assert P * Q == oracles.from_sympy(oracles.to_sympy(P) * oracles.to_sympy(Q))


@given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=80),
       st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=80))
def test_kronecker_matches_schoolbook(a, b):
    assert _kronecker_int(a, b) == _school_int(a, b)


def test_large_product_matches_sympy():
    P = Polynomial([ExactScalar(Fraction(k % 7 - 3, k % 5 + 1), k % 3) for k in range(120)])
    Q = Polynomial([ExactScalar(Fraction(k % 4 - 1, 3), -(k % 2)) for k in range(90)])
    assert P * Q == oracles.from_sympy(oracles.to_sympy(P) * oracles.to_sympy(Q))


@given(polynomials(max_degree=6), polynomials(min_degree=1, max_degree=3))
def test_divmod(P, D):
    q, r = poly_divmod(P, D)
    assert q * D + r == P
    assert r.degree < D.degree


# -- composition and iteration ---------------------------------------------------------
def test_compose_examples():
    assert compose(poly("z^2+1"), poly("z^3")) == poly("z^6+1")
    assert compose(poly("z(z+1)^2"), poly("z^2")) == poly("z^6+2*z^4+z^2")


@given(polynomials(max_degree=3), polynomials(max_degree=3))
def test_compose_matches_sympy(P, Q):
    assert compose(P, Q) == oracles.compose(P, Q)


@given(polynomials(max_degree=3))
def test_compose_identity(P):
    assert compose(P, Z) == P
    assert compose(Z, P) == P


@given(polynomials(max_degree=3), polynomials(max_degree=3), polynomials(max_degree=2))
def test_compose_associative(P, Q, R):
    assert compose(compose(P, Q), R) == compose(P, compose(Q, R))


@given(polynomials(min_degree=1, max_degree=4), polynomials(min_degree=1, max_degree=4))
def test_degree_multiplicative(P, Q):
    assert compose(P, Q).degree == P.degree * Q.degree


def test_iterate_examples():
    assert iterate(poly("z^2+1"), 2) == poly("z^4+2*z^2+2")
    assert iterate(poly("z^3+z+7"), 0) == Z
    assert iterate(poly("z^2"), 3) == poly("z^8")


def test_degree_cap():
    with pytest.raises(BudgetExceeded):
        iterate(poly("z^2+1"), 5, degree_cap=16)
    with pytest.raises(BudgetExceeded):
        compose(poly("z^3"), poly("z^3"), degree_cap=8)
    assert iterate(poly("z^2+1"), 4, degree_cap=16).degree == 16


# -- critical data ---------------------------------------------------------------------
def test_critical_data_examples():
    d = derivative_and_critical_data(poly("z^2+1"))
    assert d.derivative == poly("2*z") and d.points == (ZERO,) and d.values == (ONE,) and d.split
    d = derivative_and_critical_data(poly("4*z^3-3*z"))
    assert d.derivative == poly("12*z^2-3")
    assert set(d.points) == {ExactScalar(Fraction(1, 2)), ExactScalar(Fraction(-1, 2))}
    assert set(d.values) == {ONE, -ONE} and d.split
    d = derivative_and_critical_data(poly("z^3-2*z"))
    assert d.points == () and not d.split


@given(st.lists(gaussian, min_size=1, max_size=5), st.lists(st.integers(1, 3), min_size=5, max_size=5),
       st.integers(0, 2))
def test_field_roots_recovers_constructed_roots(roots, mults, extra):
    roots = list(dict.fromkeys(roots))
    P = Polynomial([ONE])
    for r, e in zip(roots, mults):
        P = P * Polynomial([-r, ONE]) ** e
    # An irreducible factor with no roots in Q(i).
    P = P * (poly("z^2-2") if extra == 1 else poly("z^3-3") if extra == 2 else Polynomial([ONE]))
    data = field_roots(P)
    assert dict(data.roots) == dict(zip(roots, mults))
    assert data.split == (extra == 0)


@given(polynomials(min_degree=2, max_degree=4, coeffs=rationals))
def test_critical_value_polynomial_matches_resultant(P):
    import sympy

    w = sympy.Symbol("w")
    zs = oracles.z
    expr = sympy.resultant(sympy.diff(oracles.to_sympy(P), zs), oracles.to_sympy(P) - w, zs)
    expected = sympy.Poly(expr, w).monic()
    got = critical_value_polynomial(P)
    assert got == oracles.from_sympy(expected.as_expr().subs(w, zs))


# -- gcd, squarefree, odd part ------------------------------------------------------------
def test_gcd_examples():
    assert gcd(poly("z^2-1"), poly("z-1")) == poly("z-1")
    assert gcd(poly("2*z^2+4"), Polynomial()) == poly("z^2+2")
    assert gcd(poly("(z-1)^2*(z+2)"), poly("(z-1)*(z+3)")) == poly("z-1")


@given(polynomials(max_degree=4), polynomials(max_degree=4), polynomials(min_degree=1, max_degree=2))
def test_gcd_matches_sympy(P, Q, R):
    assume(not (P * R).is_zero() or not (Q * R).is_zero())
    assert gcd(P * R, Q * R) == oracles.gcd(P * R, Q * R)


@given(polynomials(min_degree=1, max_degree=3), polynomials(min_degree=1, max_degree=2))
def test_squarefree_decomposition_reconstructs(P, Q):
    F = P * Q * Q
    c, factors = squarefree_decomposition(F)
    prod = Polynomial([c])
    for i, S in enumerate(factors, start=1):
        prod = prod * S ** i
    assert prod == F
    for S in factors:
        assert gcd(S, S.derivative()).degree == 0


def test_odd_part_examples():
    assert odd_part(poly("(z-1)*(2*z+1)^2")) == poly("z-1")
    assert odd_part(poly("z^2-1")) == poly("z^2-1")
    assert odd_part(poly("(z-3)^4")) == Polynomial([1])


@given(st.lists(st.tuples(gaussian, st.integers(1, 4)), min_size=1, max_size=4), nonzero_gaussian)
def test_odd_part_of_constructed_product(parts, lead):
    parts = list(dict(parts).items())
    P = Polynomial([lead])
    expected = Polynomial([ONE])
    for r, e in parts:
        P = P * Polynomial([-r, ONE]) ** e
        if e % 2:
            expected = expected * Polynomial([-r, ONE])
    assert odd_part(P) == expected


@given(polynomials(min_degree=1, max_degree=4))
def test_odd_part_matches_factorization(P):
    assert odd_part(P * P * Polynomial([-1, 1])) == oracles.odd_part(P * P * Polynomial([-1, 1]))


# -- adic expansion -----------------------------------------------------------------
def test_adic_examples():
    assert adic_expansion(poly("z^4+2*z^2+1"), poly("z^2")).digits == (1, 2, 1)
    assert adic_expansion(poly("z^3"), poly("z^3")).digits == (0, 1)
    assert adic_expansion(poly("z^3+z"), poly("z^2")).digits == (Z, Z)


@given(polynomials(max_degree=8), polynomials(min_degree=1, max_degree=3))
def test_adic_reconstruction(P, H):
    exp = adic_expansion(P, H)
    assert exp.reconstruct() == P
    assert all(d.degree < H.degree for d in exp.digits)
    if P.degree >= 0:
        assert len(exp.digits) == P.degree // H.degree + 1


# -- affine maps ----------------------------------------------------------------------
def test_affine_conjugate_examples():
    assert affine_conjugate(poly("z^2-1"), AffineMap(1, 1)) == poly("(z-1)^2")
    assert affine_conjugate(poly("z^2-1"), AffineMap.identity()) == poly("z^2-1")
    assert affine_conjugate(poly("z^2"), AffineMap(2)) == poly("z^2/2")


@given(polynomials(min_degree=1, max_degree=4), affine_maps)
def test_affine_conjugate_round_trip(P, lam):
    assert affine_conjugate(affine_conjugate(P, lam), lam.inverse()) == P


@given(polynomials(min_degree=1, max_degree=3), polynomials(min_degree=1, max_degree=3), affine_maps)
def test_affine_conjugate_respects_composition(P, Q, lam):
    lhs = affine_conjugate(compose(P, Q), lam)
    rhs = compose(affine_conjugate(P, lam), affine_conjugate(Q, lam))
    assert lhs == rhs


@given(affine_maps, affine_maps, gaussian)
def test_affine_composition(f, g, x):
    assert (f @ g)(x) == f(g(x))
    assert f.inverse()(f(x)) == x


# -- modular screen -------------------------------------------------------------------
def test_modular_constants():
    assert (modular.SQRT_MINUS_ONE ** 2 + 1) % modular.PRIME == 0
    assert modular.PRIME % 4 == 1


@given(polynomials(min_degree=1, max_degree=3), polynomials(min_degree=1, max_degree=3))
def test_modular_screen_never_rejects_a_quotient(G, H):
    assert modular.left_quotient_possible(compose(G, H), H)


def test_modular_screen_rejects_non_quotient():
    assert not modular.left_quotient_possible(poly("z^4+z^2"), poly("z^2+z"))
