"""Hypothesis strategies for small monomial ideals."""

from hypothesis import strategies as st

from lexman.models import RingContext
from lexman.monomial import MonomialIdeal, borel_closure


def monomials(n: int, max_exponent: int = 3):
    return st.tuples(*[st.integers(min_value=0, max_value=max_exponent)] * n)


def nonunit_monomials(n: int, max_exponent: int = 3):
    return monomials(n, max_exponent).filter(any)


@st.composite
def ideals(draw, n: int = 3, max_exponent: int = 2, max_generators: int = 4):
    gens = draw(st.lists(nonunit_monomials(n, max_exponent), min_size=1, max_size=max_generators))
    return MonomialIdeal(RingContext(n), gens)


@st.composite
def strongly_stable_ideals(draw, n: int = 3, max_exponent: int = 2, max_generators: int = 2):
    gens = draw(st.lists(nonunit_monomials(n, max_exponent), min_size=1, max_size=max_generators))
    return borel_closure(RingContext(n), gens)
