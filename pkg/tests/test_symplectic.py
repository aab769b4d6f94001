import random
from fractions import Fraction

import pytest

from qpoisson.coeff import ONE, qpow
from qpoisson.qcalculus import X, P, qpb_direct
from qpoisson.rewriting import nc
from qpoisson.symplectic import (
    EPSILON,
    TMatrix,
    bracket_from_matrix,
    bracket_matrix,
    check_bracket_invariance,
    check_ctt,
    classical_invariance,
    commutative_relations,
    defining_matrix,
    jq,
    reports_coincide,
    run_candidates,
)

from strategies import random_qpoly

HALF = Fraction(1, 2)


def test_jq_values():
    J = jq()
    assert J[0, 1] == qpow(HALF) and J[1, 0] == -qpow(-HALF)
    assert J[0, 0].is_zero() and J[1, 1].is_zero()
    assert J.classical().equals(EPSILON)
    assert bracket_matrix().equals(J)
    assert defining_matrix().equals(J.transpose())


def test_bracket_from_matrix_agrees():
    rng = random.Random(4)
    for _ in range(25):
        f, g = random_qpoly(rng, 4, 4), random_qpoly(rng, 4, 4)
        assert bracket_from_matrix(f, g) == qpb_direct(f, g)


def test_identity_transform():
    T = TMatrix.identity()
    assert check_ctt(T, None).passed
    assert check_bracket_invariance(T, None).passed


def test_scaling_is_not_canonical():
    T = TMatrix.numeric(2, 0, 0, 1)
    assert not check_bracket_invariance(T, None).passed
    assert not check_ctt(T, None).passed


def test_commutative_unimodular_classical():
    R = commutative_relations(determinant=True)
    T = TMatrix.generic()
    assert check_ctt(T, R, classical=True).passed
    assert check_bracket_invariance(T, R, classical=True).passed
    assert reports_coincide(T, R, classical=True)
    # without the determinant the (1,2) entry survives
    assert not check_ctt(T, commutative_relations(), classical=True).passed


def test_candidates():
    results = {r.name: r for r in run_candidates(max_length=5)}
    assert len(results) == 10
    assert all(r.terminating and r.confluent for r in results.values())
    assert all(r.reports_coincide for r in results.values())
    passing = sorted(n for n, r in results.items() if r.ctt_passed)
    assert passing == ["manin-det[r=q]"]
    assert all(r.invariance_passed == r.ctt_passed for r in results.values())


def test_random_unimodular_matrices():
    rng = random.Random(0)
    for _ in range(200):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        assert classical_invariance(a, b, c, (1 + b * c) / a)


def test_non_unimodular_fails():
    assert not classical_invariance(2, 0, 0, 1)
    assert not classical_invariance(1, 1, 1, 1)
