import pytest
from hypothesis import assume, given, strategies as st

import oracles
from strategies import affine_maps, gaussian, polynomials, rational_affine_maps
from polysemi.poly_core import ONE, AffineMap, ExactScalar, Polynomial, Z, affine_conjugate, compose, odd_part, poly
from polysemi.special_forms import (
    CHEBYSHEV_MINUS,
    CHEBYSHEV_PLUS,
    NOT_SPECIAL,
    POWER,
    center,
    chebyshev,
    chebyshev_explicit,
    classify_special,
    k_pairs_by_odd_part,
    symmetry_order,
)


def test_chebyshev_examples():
    assert chebyshev(3) == poly("4*z^3 - 3*z")
    assert chebyshev(1) == Z
    assert chebyshev(6) == poly("32*z^6 - 48*z^4 + 18*z^2 - 1")


@pytest.mark.parametrize("n", range(13))
def test_recurrence_matches_closed_form(n):
    assert chebyshev(n) == chebyshev_explicit(n) == oracles.chebyshev(n)


@pytest.mark.parametrize("n", range(13))
def test_chebyshev_parity(n):
    assert compose(chebyshev(n), -Z) == chebyshev(n) * (-1) ** n


def test_chebyshev_semigroup():
    for m in range(2, 11):
        for n in range(2, 11):
            assert compose(chebyshev(m), chebyshev(n)) == chebyshev(m * n)


# -- classification ----------------------------------------------------------------
def test_z2_minus_2():
    c = classify_special(poly("z^2-2"))
    assert c.kind == CHEBYSHEV_PLUS
    assert set(c.K) == {ExactScalar(-2), ExactScalar(2)}
    assert odd_part((poly("z^2-2") + 2) * (poly("z^2-2") - 2)) == poly("(z-2)(z+2)")


def test_not_special_quadratic():
    assert classify_special(poly("z^2+1")).kind == NOT_SPECIAL
    assert classify_special(poly("z^2-1")).kind == NOT_SPECIAL


def test_power_example():
    # (z-1)^2 has its critical point at 1 but P(1) = 0, so it is not a power map.
    assert classify_special(poly("(z-1)^2")).kind == NOT_SPECIAL
    P = affine_conjugate(poly("z^2"), AffineMap(1, 1))
    assert P == poly("z^2 - 2*z + 2")
    c = classify_special(P)
    assert c.kind == POWER and c.witness == AffineMap(1, 1)


def test_power_witness_by_search():
    # Brute force over small rational affine maps finds the same conjugacy.
    P = poly("z^2 - 2*z + 2")
    hits = [
        (a, b) for a in (1, 2, -1, -2) for b in range(-3, 4)
        if affine_conjugate(poly("z^2") * a, AffineMap(1, b)) == P
    ]
    assert hits == [(1, 1)]


@pytest.mark.parametrize("n", range(2, 9))
def test_chebyshev_is_classified(n):
    c = classify_special(chebyshev(n))
    assert c.kind == CHEBYSHEV_PLUS
    assert set(c.K) == {-ONE, ONE}


@pytest.mark.parametrize("n", [3, 5, 7])
def test_minus_chebyshev_odd(n):
    assert classify_special(-chebyshev(n)).kind == CHEBYSHEV_MINUS


@pytest.mark.parametrize("n", [2, 4, 6])
def test_minus_chebyshev_even_is_plus(n):
    # -T_n is conjugate to T_n by z -> -z when n is even.
    assert classify_special(-chebyshev(n)).kind == CHEBYSHEV_PLUS


@given(st.integers(2, 6), rational_affine_maps)
def test_conjugated_power(n, lam):
    c = classify_special(affine_conjugate(Polynomial.monomial(n), lam))
    assert c.kind == POWER


@given(st.integers(2, 7), affine_maps)
def test_conjugated_chebyshev(n, lam):
    P = affine_conjugate(chebyshev(n), lam)
    c = classify_special(P)
    assert c.kind == CHEBYSHEV_PLUS
    assert c.K_polynomial.degree == 2
    assert odd_part((P - lam(ONE)) * (P - lam(-ONE))) == c.K_polynomial


def test_irrational_scaling_is_still_decided():
    # sqrt(2) * T_3(z / sqrt(2)) has rational coefficients.
    P = poly("2*z^3 - 3*z")
    c = classify_special(P)
    assert c.kind == CHEBYSHEV_PLUS and c.witness is None and c.K is None
    assert c.K_polynomial == poly("z^2 - 2")


@given(polynomials(min_degree=2, max_degree=5))
def test_routes_agree(P):
    """The exact pattern test and the critical-value K-pair test agree."""
    c = classify_special(P)
    pairs = k_pairs_by_odd_part(P)
    if c.kind in (CHEBYSHEV_PLUS, CHEBYSHEV_MINUS) and c.K is not None:
        assert tuple(sorted(c.K, key=ExactScalar.sort_key)) in pairs
    if c.kind == NOT_SPECIAL:
        assert pairs == []


@given(st.integers(2, 6), affine_maps, st.sampled_from([1, -1]))
def test_k_pair_route_on_conjugates(n, lam, sign):
    P = affine_conjugate(chebyshev(n) * sign, lam)
    c = classify_special(P)
    if c.K is not None:
        pairs = k_pairs_by_odd_part(P)
        assert tuple(sorted(c.K, key=ExactScalar.sort_key)) in pairs


@given(polynomials(min_degree=2, max_degree=5), gaussian, gaussian)
def test_odd_part_parity(P, a, b):
    # The preimage of two points under P always has an even, nonzero number
    # of odd-multiplicity points.
    assume(a != b)
    deg = odd_part((P - a) * (P - b)).degree
    assert deg >= 2 and deg % 2 == 0


# -- symmetry ----------------------------------------------------------------------
def test_symmetry_examples():
    s = symmetry_order(poly("z^5+z^3"))
    assert s.ell == 2
    assert compose(poly("z^5+z^3"), -Z) == -poly("z^5+z^3")
    assert symmetry_order(poly("z^2-1")).ell == 1
    assert symmetry_order(poly("z*(z^3+1)")).ell == 3


@given(polynomials(min_degree=1, max_degree=3), st.integers(2, 4), affine_maps)
def test_symmetry_of_constructed_shape(S, ell, lam):
    S = S + Polynomial([1]) if not S.coeff(0) else S
    P = Z * compose(S, Polynomial.monomial(ell))
    prof = symmetry_order(affine_conjugate(P, lam))
    assert prof.ell % ell == 0
    for eps in prof.field_symmetries:
        Q = prof.centered
        assert compose(Q, Z * eps) == Q * eps


def test_center():
    s, Q = center(poly("z^2 - 2*z + 2"))
    assert s == ONE and Q == poly("z^2")
