"""Hypothesis strategies for small exact polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from polysemi.poly_core import AffineMap, ExactScalar, Polynomial

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=1, max_value=3),
)

rationals = small_fractions.map(ExactScalar)

gaussian = st.one_of(
    rationals,
    st.builds(ExactScalar, small_fractions, small_fractions),
)

nonzero_gaussian = gaussian.filter(bool)


@st.composite
def polynomials(draw, min_degree=0, max_degree=4, coeffs=gaussian):
    deg = draw(st.integers(min_value=min_degree, max_value=max_degree))
    body = draw(st.lists(coeffs, min_size=deg, max_size=deg))
    lead = draw(coeffs.filter(bool))
    return Polynomial(body + [lead])


affine_maps = st.builds(AffineMap, nonzero_gaussian, gaussian)
rational_affine_maps = st.builds(AffineMap, rationals.filter(bool), rationals)
