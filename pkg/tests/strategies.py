"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from qpoisson.coeff import I, ScalarExpr, const, qpow, sym
from qpoisson.qalgebra import QPoly

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def monomial_scalars(draw):
    """c * s^k * m^a * i^b with small exponents."""
    c = const(draw(rationals))
    k = draw(st.integers(-3, 3))
    a = draw(st.integers(0, 2))
    out = c * qpow(Fraction(k, 2)) * sym("m", a)
    if draw(st.booleans()):
        out = out * I
    return out


@st.composite
def scalars(draw, max_terms=3):
    terms = draw(st.lists(monomial_scalars(), min_size=1, max_size=max_terms))
    out = ScalarExpr.const(0)
    for t in terms:
        out = out + t
    if draw(st.booleans()):
        den = draw(monomial_scalars())
        if not den.is_zero():
            out = out / (den + 1 if not (den + 1).is_zero() else den)
    return out


nonzero_scalars = scalars().filter(lambda c: not c.is_zero())


@st.composite
def qpolys(draw, max_degree=4, max_terms=4, coeffs=None):
    coeffs = coeffs or monomial_scalars()
    out = {}
    for _ in range(draw(st.integers(0, max_terms))):
        n = draw(st.integers(0, max_degree))
        m = draw(st.integers(0, max_degree - n))
        out[(n, m)] = draw(coeffs)
    return QPoly(out)


def random_qpoly(rng, max_degree, max_terms=4):
    """Plain ``random`` version for bulk acceptance loops."""
    out = {}
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0, max_degree)
        m = rng.randint(0, max_degree - n)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3)) * qpow(Fraction(rng.randint(-3, 3), 2))
        if rng.random() < 0.3:
            c = c * sym("m")
        out[(n, m)] = c
    return QPoly(out)
