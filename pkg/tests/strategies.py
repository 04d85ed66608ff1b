"""Hypothesis strategies for small feasible standard-form LPs."""

from hypothesis import assume
from hypothesis import strategies as st

from lplab import linalg
from lplab.lp import validate

coef = st.fractions(min_value=-6, max_value=6, max_denominator=3)


@st.composite
def feasible_lps(draw, max_m=3, max_n=6):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(m + 1, max_n))
    A = draw(st.lists(st.lists(coef, min_size=n, max_size=n), min_size=m, max_size=m))
    assume(linalg.rank(A) == m)
    x_hat = draw(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=3), min_size=n, max_size=n))
    b = linalg.matvec(A, x_hat)
    c = draw(st.lists(coef, min_size=n, max_size=n))
    return validate(A, b, c, "hyp")
