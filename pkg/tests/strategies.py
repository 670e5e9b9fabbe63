"""Hypothesis strategies for exact-rational algebra elements."""

from fractions import Fraction

from hypothesis import strategies as st

from f4transfer.albert import AlbertElement
from f4transfer.fields import QQ
from f4transfer.freudenthal import FreudenthalVector
from f4transfer.octonion import Octonion

rationals = st.builds(lambda n, d: QQ(Fraction(n, d)),
                      st.integers(-9, 9), st.integers(1, 5))
nonzero_rationals = rationals.filter(lambda r: r != 0)


@st.composite
def octonions(draw):
    return Octonion(draw(rationals), draw(rationals),
                    tuple(draw(rationals) for _ in range(3)),
                    tuple(draw(rationals) for _ in range(3)), QQ)


@st.composite
def albert_elements(draw):
    return AlbertElement(draw(rationals), draw(rationals), draw(rationals),
                         draw(octonions()), draw(octonions()), draw(octonions()))


@st.composite
def freudenthal_vectors(draw):
    return FreudenthalVector(draw(albert_elements()), draw(rationals),
                             draw(albert_elements()), draw(rationals))
