import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpoisson.coeff import ONE, qint, qpow, sym
from qpoisson.dynamics import (
    HamiltonianSpec,
    bracket_equations,
    closed_form_equations,
    conserved_coefficients,
    effective_frequency,
    effective_mass,
    find_conserved,
    force,
    formal_acceleration,
    hamilton_equations,
    monomial_decomposition,
    time_derivative,
)
from qpoisson.qalgebra import QPoly
from qpoisson.qcalculus import X, P, partial_left, qpb_direct

from strategies import qpolys, random_qpoly

m, w = sym("m"), sym("w")
HALF = Fraction(1, 2)


def test_effective_parameters():
    assert effective_mass(m) == 2 * m * qpow(Fraction(3, 2)) / (1 + qpow(2))
    assert effective_frequency(w) == w * qint(2) / (2 * qpow(2))
    assert effective_mass(m).classical() == m
    assert effective_frequency(w).classical() == w


def test_free_particle():
    spec = HamiltonianSpec.free(m)
    eq = hamilton_equations(spec)
    assert eq.xdot == P.scale(ONE / effective_mass(m))
    assert eq.pdot.is_zero()
    H0 = spec.to_qpoly()
    assert time_derivative(H0, H0).is_zero()


def test_oscillator():
    spec = HamiltonianSpec.oscillator(m, w)
    mq, wq = effective_mass(m), effective_frequency(w)
    eq = hamilton_equations(spec)
    assert eq.pdot == X.scale(-mq * wq * wq)
    assert eq.xdot == P.scale(ONE / mq)
    H = spec.to_qpoly()
    got = time_derivative(H, H)
    assert got == (P * X).scale(qpow(HALF) * (qpow(2) - 1) * wq * wq)
    assert got == (X * P).scale(qpow(Fraction(3, 2)) * (qpow(2) - 1) * wq * wq)
    assert not got.is_zero() and got.classical().is_zero()


def test_scalar_hamiltonian():
    eq = hamilton_equations(QPoly.const(sym("m")))
    assert eq.xdot.is_zero() and eq.pdot.is_zero()


def test_route_agreement_random():
    rng = random.Random(21)
    for _ in range(30):
        H = random_qpoly(rng, 6, 5)
        a, b = closed_form_equations(H), bracket_equations(H)
        assert a.xdot == b.xdot and a.pdot == b.pdot


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), qpolys(max_degree=4))
def test_monomial_decomposition(n, k, H):
    assert time_derivative(QPoly.monomial(n, k), H) == monomial_decomposition(n, k, H)


def test_explicit_term_added_verbatim():
    H = HamiltonianSpec.oscillator(m, w).to_qpoly()
    extra = X.scale(sym("m"))
    assert time_derivative(X, H, extra) == time_derivative(X, H) + extra


def test_conserved_oscillator():
    E = find_conserved(HamiltonianSpec.oscillator(m, w))
    assert E == (P * P).scale(ONE / (2 * m)) + (X * X).scale(m * w * w / (2 * qpow(2)))


def test_conserved_free():
    spec = HamiltonianSpec.free(m)
    assert find_conserved(spec) == spec.to_qpoly()


def test_conserved_cubic():
    c3 = sym("c3")
    d = conserved_coefficients(HamiltonianSpec(m, [(3, c3)]))
    assert d == {3: c3 * qpow(-5)} or d[3] == c3 * qpow(-5)


@pytest.mark.parametrize("seed", range(5))
def test_conserved_random_potentials(seed):
    rng = random.Random(seed)
    ns = sorted(rng.sample(range(1, 9), rng.randint(1, 8)))
    spec = HamiltonianSpec(m, [(n, sym(f"c{n}")) for n in ns])
    E = find_conserved(spec)
    for n in ns:
        assert E.coefficient(n, 0) == sym(f"c{n}") * qpow(4 - 3 * n)
    assert qpb_direct(E, spec.to_qpoly()).is_zero()
    # at q = 1 the invariant is H itself
    assert E.classical() == spec.to_qpoly().classical()


def test_force_law():
    spec = HamiltonianSpec(m, [(2, sym("c2")), (3, sym("c3")), (5, sym("c5"))])
    eq = hamilton_equations(spec)
    F = force(spec)
    assert eq.pdot == F
    assert F == partial_left(spec.potential_qpoly(), "x").scale(-qpow(-HALF))
    assert formal_acceleration(spec) == F


def test_spec_validation():
    with pytest.raises(ValueError):
        HamiltonianSpec(0, [])
    with pytest.raises(ValueError):
        HamiltonianSpec(m, [(0, 1)])
    with pytest.raises(ValueError):
        HamiltonianSpec.from_qpoly(m, X * P)
    merged = HamiltonianSpec(m, [(2, 1), (2, 2)])
    assert merged.potential == [(2, 3)] or merged.potential[0][1] == 3


def test_json_shape():
    data = hamilton_equations(HamiltonianSpec.oscillator(m, w)).to_json()
    assert set(data) == {"xdot", "pdot"}
    assert data["xdot"]["terms"][0]["n"] == 0 and data["xdot"]["terms"][0]["m"] == 1
