import random

import pytest

from qpoisson.coeff import ONE, qint, qpow
from qpoisson.errors import DegreeOverflowError
from qpoisson.linop import LinOperator, basis
from qpoisson.qalgebra import QPoly
from qpoisson.qcalculus import X, P
from qpoisson.realization import classical_commutators, crosscheck_derivative, realize, verify_relations

from strategies import random_qpoly


def test_generator_actions():
    assert realize("Dx", 4).apply({(2, 0): ONE}) == {(2, 0): qpow(2)}
    assert realize("dx", 4).apply({(3, 0): ONE}) == {(2, 0): qint(3)}
    assert realize("dx", 4).classical().apply({(3, 0): ONE}) == {(2, 0): 3}
    assert realize("p", 4).apply({(2, 1): ONE}) == {(2, 2): qpow(2)}
    assert realize("dp", 4).apply({(1, 2): ONE}) == {(1, 1): qpow(1) * qint(2)}


def test_spot_check_px():
    p, x = realize("p", 6), realize("x", 6)
    px = p @ x
    for a, b in [(0, 0), (2, 1), (1, 3)]:
        assert px.apply({(a, b): ONE}) == {(a + 1, b + 1): qpow(a + 1)}
        assert (x @ p).scale(qpow(1)).apply({(a, b): ONE}) == {(a + 1, b + 1): qpow(a + 1)}


def test_relations_symbolic():
    rep = verify_relations(12)
    assert rep.passed, rep.to_text()
    assert len(rep.checks) == 7


def test_relations_classical():
    assert verify_relations(6, classical=True).passed


def test_classical_commutators():
    assert all(op.is_zero() for op in classical_commutators(6).values())


def test_detects_wrong_relation():
    p, x = realize("p", 5), realize("x", 5)
    wrong = p @ x - x @ p
    assert wrong.first_difference(wrong.scale(0)) == (0, 0)


def test_truncation_domains():
    x = realize("x", 4)
    assert x.reach == 1 and max(sum(e) for e in x.domain()) == 3
    xx = x @ x
    assert xx.reach == 2 and xx.shift == 2
    d = realize("dx", 4)
    dx_x = d @ x
    assert dx_x.reach == 1 and dx_x.shift == 0
    with pytest.raises(ValueError):
        x.apply({(4, 0): ONE})


def test_basis_size():
    assert len(basis(2, 12)) == 91


def test_crosscheck_examples():
    rep = crosscheck_derivative(X * X * P, 4)
    assert rep.passed
    assert realize("dp", 4).apply({(2, 1): ONE}) == {(2, 0): qpow(2)}
    assert crosscheck_derivative(QPoly.const(3), 2).passed
    with pytest.raises(DegreeOverflowError):
        crosscheck_derivative(X**5, 4)


def test_crosscheck_random():
    rng = random.Random(9)
    for _ in range(30):
        assert crosscheck_derivative(random_qpoly(rng, 8, 5), 8).passed


def test_identity_composition():
    one = LinOperator.identity(2, 5)
    d = realize("dx", 5)
    assert one @ d == d and d @ one == d
