import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpoisson.coeff import ONE, qint, qpow, sym
from qpoisson.errors import ParseError, UndeclaredIdentifierError
from qpoisson.parser import BinOp, Gen, Neg, Num, Pow, Sym, parse, parse_qpoly, parse_scalar, to_source
from qpoisson.qalgebra import QPoly
from qpoisson.qcalculus import X, P, qpb_direct

from strategies import random_qpoly


def test_examples():
    assert parse_qpoly("p*x") == (X * P).scale(qpow(1))
    assert parse_qpoly("x^2 + (1+q)*x*p") == X * X + (X * P).scale(1 + qpow(1))
    assert parse_scalar("q^(1/2)") == qpow(Fraction(1, 2))
    assert parse_scalar("q^(-3/2)*2") == 2 * qpow(Fraction(-3, 2))
    assert parse_scalar("s^2") == qpow(1)
    assert parse_scalar("m/2", ["m"]) == sym("m") / 2
    assert parse_qpoly("-x^2/3") == (X * X).scale(Fraction(-1, 3))


def test_precedence():
    assert parse("1 - 2 - 3") == BinOp("-", BinOp("-", Num(1, "1"), Num(2, "2")), Num(3, "3"))
    assert parse("-x^2") == Neg(Pow(Gen("x"), Fraction(2)))
    assert parse("a*b/c", ["a", "b", "c"]) == BinOp("/", BinOp("*", Sym("a"), Sym("b")), Sym("c"))


def test_undeclared_position():
    with pytest.raises(UndeclaredIdentifierError) as info:
        parse("w*z", ["w"])
    assert (info.value.line, info.value.col) == (1, 3)
    with pytest.raises(UndeclaredIdentifierError) as info:
        parse("x +\n  y")
    assert (info.value.line, info.value.col) == (2, 3)


@pytest.mark.parametrize("text", ["", "x +", "(x", "x)", "x^y", "x^(1/0)", "3 $ 4", "x/p", "x^(1/2)", "p^-1", "m^(1/2)"])
def test_errors(text):
    with pytest.raises(ParseError):
        parse_qpoly(text, ["m"])


def test_scalar_forbids_generators():
    with pytest.raises(ParseError):
        parse_scalar("x")


LEAVES = st.one_of(
    st.integers(0, 20).map(lambda n: Num(Fraction(n), str(n))),
    st.sampled_from([Sym("q"), Sym("m"), Gen("x"), Gen("p")]),
)


def _trees(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.sampled_from([Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(-3, 2)])),
    )


ASTS = st.recursive(LEAVES, _trees, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(ASTS)
def test_ast_round_trip(tree):
    assert parse(to_source(tree), ["m"]) == tree


def test_minimal_parentheses():
    assert to_source(parse("(a*b)*c", "abc")) == "a*b*c"
    assert to_source(parse("a*(b*c)", "abc")) == "a*(b*c)"
    assert to_source(parse("(a+b)^2", "ab")) == "(a + b)^2"
    assert to_source(parse("-(a^2)", "a")) == "-a^2"
    assert to_source(parse("(-a)^2", "a")) == "(-a)^2"


def test_qpoly_text_round_trip():
    rng = random.Random(1)
    for _ in range(300):
        f = random_qpoly(rng, 6, 5)
        assert parse_qpoly(f.to_text(), ["m"]) == f


def test_round_trip_of_derived_objects():
    H = parse_qpoly("p^2/(2*m) + 1/2*m*w^2*x^2", ["m", "w"])
    hh = qpb_direct(H, H)
    assert parse_qpoly(hh.to_text(), ["m", "w"]) == hh
