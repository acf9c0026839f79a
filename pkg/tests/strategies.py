"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from qtmac.qtalgebra import QTPoly, QTRatio

exps = st.integers(min_value=-3, max_value=4)
nonneg = st.integers(min_value=0, max_value=4)
coeffs = st.integers(min_value=-5, max_value=5).filter(bool)


def laurent_polys(max_terms: int = 4, lo: int = -3):
    e = st.integers(min_value=lo, max_value=4)
    return st.dictionaries(st.tuples(e, e), coeffs, max_size=max_terms).map(QTPoly)


def polys(max_terms: int = 4):
    return laurent_polys(max_terms, lo=0)


def nonzero_polys(max_terms: int = 4, lo: int = 0):
    return laurent_polys(max_terms, lo=lo).filter(lambda p: not p.is_zero())


@st.composite
def ratios(draw, max_terms: int = 3):
    num = draw(laurent_polys(max_terms))
    den = draw(nonzero_polys(max_terms, lo=-2))
    return QTRatio(num, den)


@st.composite
def nonzero_ratios(draw, max_terms: int = 3):
    num = draw(nonzero_polys(max_terms, lo=-2))
    den = draw(nonzero_polys(max_terms, lo=-2))
    return QTRatio(num, den)
