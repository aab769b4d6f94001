"""Hamilton equations, observables' evolution and the conserved-energy solver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import ONE, ScalarExpr, qint, qpow
from .errors import InconsistentSystemError, QPoissonError
from .qalgebra import QPoly
from .qcalculus import X, P, partial_left, qpb_direct

HALF = Fraction(1, 2)


def effective_mass(m):
    """m_q = 2 m q^(3/2) / [2]_q."""
    return ScalarExpr.const(2) * m * qpow(Fraction(3, 2)) / qint(2)


def effective_frequency(w):
    """w_q = w [2]_q / (2 q^2)."""
    return w * qint(2) / (ScalarExpr.const(2) * qpow(2))


@dataclass
class HamiltonianSpec:
    """H = p^2/(2 mass) + sum c_n x^n."""

    mass: ScalarExpr
    potential: list = field(default_factory=list)

    def __post_init__(self):
        self.mass = ScalarExpr.const(self.mass)
        if self.mass.is_zero():
            raise ValueError("mass must be nonzero")
        merged = {}
        for n, c in self.potential:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"potential exponents must be integers >= 1, got {n!r}")
            merged[n] = merged.get(n, ScalarExpr.const(0)) + ScalarExpr.const(c)
        self.potential = [(n, c) for n, c in sorted(merged.items()) if not c.is_zero()]

    @classmethod
    def free(cls, mass):
        return cls(mass, [])

    @classmethod
    def oscillator(cls, mass, omega):
        mass = ScalarExpr.const(mass)
        return cls(mass, [(2, mass * omega * omega / 2)])

    @classmethod
    def from_qpoly(cls, mass, potential):
        """Build from a potential given as a QPoly in x alone."""
        pairs = []
        for (n, m), c in potential.terms.items():
            if m:
                raise ValueError("potential must depend on x only")
            if n == 0:
                raise ValueError("constant terms are not allowed in the potential")
            pairs.append((n, c))
        return cls(mass, pairs)

    def kinetic(self):
        return QPoly.monomial(0, 2, ONE / (2 * self.mass))

    def potential_qpoly(self):
        return QPoly({(n, 0): c for n, c in self.potential})

    def to_qpoly(self):
        return self.kinetic() + self.potential_qpoly()

    @property
    def is_free(self):
        return not self.potential

    def harmonic_coefficient(self):
        """c_2 if the potential is purely quadratic, else None."""
        if len(self.potential) == 1 and self.potential[0][0] == 2:
            return self.potential[0][1]
        return None


@dataclass
class MotionEquations:
    xdot: QPoly
    pdot: QPoly

    def to_json(self):
        return {
            "xdot": {"text": self.xdot.to_text(), "terms": self.xdot.to_json()},
            "pdot": {"text": self.pdot.to_text(), "terms": self.pdot.to_json()},
        }


def _as_qpoly(H):
    return H.to_qpoly() if isinstance(H, HamiltonianSpec) else H


def closed_form_equations(H):
    """xdot = q^(1/2) (dp H)^L, pdot = -q^(-1/2) (dx H)^L."""
    H = _as_qpoly(H)
    return MotionEquations(
        partial_left(H, "p").scale(qpow(HALF)), partial_left(H, "x").scale(-qpow(-HALF))
    )


def bracket_equations(H):
    H = _as_qpoly(H)
    return MotionEquations(qpb_direct(X, H), qpb_direct(P, H))


def hamilton_equations(H):
    """Equations of motion; the bracket and closed-form routes must agree."""
    closed, via_bracket = closed_form_equations(H), bracket_equations(H)
    if closed.xdot != via_bracket.xdot or closed.pdot != via_bracket.pdot:
        raise QPoissonError("bracket and closed-form equations of motion disagree")
    return closed


def time_derivative(f, H, explicit=None):
    """{f, H}_q, plus an explicit time derivative added verbatim."""
    out = qpb_direct(f, _as_qpoly(H))
    return out if explicit is None else out + explicit


def monomial_decomposition(n, m, H):
    """[n] {x,H} x^(n-1) p^m + [m] q^n {p,H} x^n p^(m-1)."""
    H = _as_qpoly(H)
    out = QPoly.zero()
    if n:
        out = out + (qpb_direct(X, H) * QPoly.monomial(n - 1, m)).scale(qint(n))
    if m:
        out = out + (qpb_direct(P, H) * QPoly.monomial(n, m - 1)).scale(qint(m) * qpow(n))
    return out


def conserved_coefficients(spec):
    """Solve for d_n in E = p^2/2m + sum d_n x^n with {E, H}_q = 0."""
    H = spec.to_qpoly()
    base = qpb_direct(spec.kinetic(), H)
    solution, covered = {}, set()
    for n, _ in spec.potential:
        column = qpb_direct(QPoly.monomial(n, 0), H)
        key = (n - 1, 1)
        if set(column.terms) != {key}:
            raise InconsistentSystemError(f"bracket of x^{n} with H is not supported on x^{n - 1} p")
        if key in covered:
            raise InconsistentSystemError("linear system is not diagonal")
        covered.add(key)
        solution[n] = -base.coefficient(*key) / column.coefficient(*key)
    leftover = [k for k in base.terms if k not in covered]
    if leftover:
        raise InconsistentSystemError(f"unmatched monomials {sorted(leftover)} in the bracket")
    return solution


def find_conserved(spec):
    """E_q with fixed kinetic term, verified by substitution."""
    d = conserved_coefficients(spec)
    E = spec.kinetic() + QPoly({(n, 0): c for n, c in d.items()})
    if not qpb_direct(E, spec.to_qpoly()).is_zero():
        raise InconsistentSystemError("solved invariant fails the substitution check")
    return E


def force(spec):
    """F_q = -q^(-1/2) (dx V)^L."""
    return partial_left(spec.potential_qpoly(), "x").scale(-qpow(-HALF))


def formal_acceleration(spec):
    """d/dt of xdot computed with the bracket, times the effective mass."""
    eqs = hamilton_equations(spec)
    return time_derivative(eqs.xdot, spec).scale(effective_mass(spec.mass))
