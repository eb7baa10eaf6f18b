import pytest
from hypothesis import given, strategies as st

from strategies import polynomials, rationals
from polysemi.errors import ConsistencyFailure, MalformedCurve, SpecialInput
from polysemi.invariant_curves import (
    BivariatePoly,
    CurveSystem,
    ParametrizedPair,
    build_curve,
    format_curve,
    join_pair,
    line_curves,
    medvedev_scanlon_form,
    verify_invariant,
)
from polysemi.poly_core import Polynomial, Z, compose, iterate, poly
from polysemi.semiconj_engine import solve_A
from polysemi.special_forms import NOT_SPECIAL, chebyshev, classify_special

F = poly("z^3+2*z^2+z")  # z(z+1)^2
G = poly("z^3+z")        # z(z^2+1)


def curve(text):
    return BivariatePoly.parse(text)


# -- bivariate arithmetic --------------------------------------------------------------
def test_parse_and_print():
    c = curve("x - y^2 = 0")
    assert c.terms() == {(1, 0): 1, (0, 2): -1}
    assert str(curve("x^2*y + 3 = y")) == "x^2*y - y + 3"
    assert curve("x = y") == curve("x - y")


def test_division_by_hand():
    # x^2 - y^4 = (x - y^2)(x + y^2)
    q, r = curve("x^2 - y^4").divmod_y(curve("x - y^2"))
    assert r.is_zero() and q == curve("x + y^2")
    q, r = curve("x^2 - y^4").divmod_y(curve("x - y^3"))
    assert not r.is_zero()


@given(polynomials(max_degree=3), polynomials(min_degree=1, max_degree=3),
       polynomials(max_degree=2), polynomials(max_degree=2))
def test_division_identity(u, v, a, b):
    D = BivariatePoly.from_separated(u, v)
    N = BivariatePoly.from_separated(a, b) * D + BivariatePoly.from_separated(b, a)
    q, r = N.divmod_y(D)
    assert q * D + r == N
    assert all(j < v.degree for (_, j) in r.terms())


def test_separated_shape():
    assert curve("x^3 - 2*y + 1").separated() == (poly("z^3+1"), poly("2*z"))
    with pytest.raises(MalformedCurve):
        curve("x*y - 1").separated()


# -- joins -----------------------------------------------------------------------------
def test_join_pair_examples():
    assert join_pair(poly("z^2"), Z) == (Z, poly("z^2"))
    u, v = join_pair(chebyshev(2), chebyshev(3))
    assert (u.degree, v.degree) == (3, 2)
    assert compose(u, chebyshev(2)) == compose(v, chebyshev(3))
    assert join_pair(poly("z^2+z"), poly("z^2-z")) is None


def test_join_pair_absent_by_linear_algebra():
    # u(z^2+z) = v(z^2-z) with deg u = deg v = 1 forces u = v = const.
    assert join_pair(poly("z^2+z"), poly("z^2-z")) is None


# -- building --------------------------------------------------------------------------
def test_build_curve_example():
    cs = build_curve(ParametrizedPair(poly("z^2"), Z, G), F, G)
    assert (cs.u, cs.v, cs.t) == (Z, poly("z^2"), F)
    assert cs.text() == "x - y^2 = 0"
    assert verify_invariant(cs.curve(), F, G)


def test_build_diagonal():
    f = poly("z^2-1")
    cs = build_curve(ParametrizedPair(Z, Z, f), f, f)
    assert (cs.u, cs.v, cs.t) == (Z, Z, f)
    assert cs.text() == "x - y = 0"


def test_build_rejects_special():
    T6 = chebyshev(6)
    h = T6
    with pytest.raises(SpecialInput):
        build_curve(ParametrizedPair(chebyshev(2), chebyshev(3), h), T6, T6)


def test_chebyshev_system_by_hand():
    # The invariants hold for the Chebyshev pair even though build_curve
    # refuses special input.
    T2, T3, T6 = chebyshev(2), chebyshev(3), chebyshev(6)
    cs = CurveSystem(T3, T2, T6, T6, T6)
    assert verify_invariant(cs.curve(), T6, T6)


def test_build_strips_common_factor():
    # pi = z^2 o z^2 and rho = z^3 o z^2 share the right factor z^2.
    h = poly("z^13+z")
    f = solve_A(poly("z^4"), h).A
    g = solve_A(poly("z^6"), h).A
    cs = build_curve(ParametrizedPair(poly("z^4"), poly("z^6"), h), f, g)
    assert {cs.u.degree, cs.v.degree} == {2, 3}
    assert verify_invariant(cs.curve(), f, g)


@given(st.sampled_from(["z^2-1", "z^3+z+1", "z^2+z+3"]), st.integers(0, 2), st.integers(0, 2))
def test_built_curves_are_invariant(b, i, j):
    h = poly(b)
    pi, rho = iterate(h, i), iterate(h, j)
    cs = build_curve(ParametrizedPair(pi, rho, h), h, h)
    from math import gcd

    assert gcd(cs.u.degree, cs.v.degree) == 1
    assert verify_invariant(cs.curve(), h, h)


# -- verification ------------------------------------------------------------------------
def test_verify_examples():
    assert verify_invariant(curve("x - y^2 = 0"), F, G)
    f = poly("z^2+3")
    assert verify_invariant(curve("x - y"), f, f)
    z2 = poly("z^2")
    assert verify_invariant(curve("x - y^2"), z2, z2)
    # x^2 - y^6 = (x - y^3)(x + y^3), so this curve is invariant too.
    assert verify_invariant(curve("x - y^3"), z2, z2)


def test_verify_wrong_curve():
    assert not verify_invariant(curve("x - y^2"), G, F)
    assert not verify_invariant(curve("x - y"), F, G)


def test_verify_rejects_mixed():
    with pytest.raises(MalformedCurve):
        verify_invariant(curve("x*y = 1"), F, G)
    with pytest.raises(MalformedCurve):
        verify_invariant(curve("3 = 0"), F, G)


def test_line_curves():
    f = poly("z^2-z")
    lines, complete = line_curves(f, poly("z^2+1"))
    assert complete
    texts = sorted(str(c.curve()) for c in lines)
    assert texts == ["x", "x - 2"]
    for c in lines:
        assert verify_invariant(c.curve(), f, poly("z^2+1"))
    _, complete = line_curves(poly("z^2-1"), poly("z^2"))
    assert not complete


# -- graph form ---------------------------------------------------------------------------
def test_medvedev_scanlon_examples():
    f = poly("z^2-1")
    diag = CurveSystem(Z, Z, f, f, f)
    assert medvedev_scanlon_form(f, diag) == ("x", Z)
    graph = CurveSystem(Z, f, f, f, f)
    assert medvedev_scanlon_form(f, graph) == ("x", f)


def test_medvedev_scanlon_commuting_root():
    R = poly("z^3+2*z")
    f = iterate(R, 2)
    graph = CurveSystem(Z, R, f, f, f)
    which, p = medvedev_scanlon_form(f, graph)
    assert p == R and compose(p, f) == compose(f, p)


def test_medvedev_scanlon_rejects_non_graph():
    T2, T3, T6 = chebyshev(2), chebyshev(3), chebyshev(6)
    with pytest.raises(SpecialInput):
        medvedev_scanlon_form(T6, CurveSystem(T3, T2, T6, T6, T6))


def test_format_curve():
    assert format_curve(Z, poly("z^2+1")) == "x - (y^2 + 1) = 0"
    assert format_curve(poly("z^3"), poly("-z")) == "x^3 - (-y) = 0"
