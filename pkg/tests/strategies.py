"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from genlink.core import MultiPoly


def exponents(nvars: int, top: int = 2):
    return st.tuples(*[st.integers(0, top)] * nvars)


def monomial_lists(nvars: int, top: int = 2, max_size: int = 5):
    return st.lists(exponents(nvars, top).filter(any), min_size=1, max_size=max_size)


def coefficients():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def polys(draw, ring, top: int = 2, max_terms: int = 4):
    terms = draw(st.lists(st.tuples(exponents(len(ring.names), top), coefficients()),
                          min_size=0, max_size=max_terms))
    acc = ring.zero()
    for e, c in terms:
        acc = acc + MultiPoly.monomial(ring, e, c)
    return acc
