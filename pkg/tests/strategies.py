"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from hminkowski.ncalg import AlgElement
from hminkowski.scalars import H, R, ParamScalar

small = st.integers(min_value=-4, max_value=4)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def polys(draw, max_terms=3):
    out = ParamScalar(0)
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(small)
        i, j = draw(st.integers(0, 2)), draw(st.integers(0, 1))
        out = out + ParamScalar(c) * H ** i * R ** j
    return out


@st.composite
def scalars(draw):
    num = draw(polys())
    den = draw(polys())
    if not den:
        den = ParamScalar(1)
    return num / den


@st.composite
def elements(draw, gens=("al", "be", "ga", "de"), max_terms=4, max_degree=3, rational_coeffs=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        w = tuple(draw(st.lists(st.sampled_from(gens), max_size=max_degree)))
        c = draw(scalars()) if rational_coeffs else ParamScalar(draw(small))
        terms[w] = terms.get(w, ParamScalar(0)) + c
    return AlgElement(terms)
