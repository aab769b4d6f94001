"""Differential calculus on the quantum plane.

Right derivatives act on normal-ordered monomials; left derivatives are
obtained by moving coefficients through the differentials using the
commutation rules between generators and ``dx``, ``dp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .coeff import ONE, ScalarExpr, qint, qpow
from .qalgebra import QPoly

X = QPoly.x()
P = QPoly.p()
GENERATORS = {"x": X, "p": P}


class Side(str, Enum):
    LEFT = "L"
    RIGHT = "R"


def _dir(direction):
    if direction not in ("x", "p"):
        raise ValueError(f"direction must be 'x' or 'p', got {direction!r}")
    return direction


def partial_right(f, direction):
    """Right derivative: coefficients stand to the right of the differential."""
    _dir(direction)
    out = {}
    for (n, m), c in f.terms.items():
        if direction == "x" and n:
            out[(n - 1, m)] = c * qint(n)
        elif direction == "p" and m:
            out[(n, m - 1)] = c * qpow(n) * qint(m)
    return QPoly(out)


# conversion between the two orderings, one monomial at a time
_Q_M2 = qpow(-2)
_Q_M1 = qpow(-1)
_Q_1 = qpow(1)
_Q_2 = qpow(2)


@lru_cache(maxsize=None)
def _to_left(which, n, m):
    """Left coefficients (A, B) with A dx + B dp = d(which) * x^n p^m."""
    a, b = (QPoly.const(1), QPoly.zero()) if which == "x" else (QPoly.zero(), QPoly.const(1))
    # push x^n p^m across the differential one letter at a time, leftmost first
    for _ in range(n):
        a, b = (a * X).scale(_Q_M2), (b * X).scale(_Q_M1)
    for _ in range(m):
        a, b = (a * P).scale(_Q_M1), (a * X).scale(_Q_M2 - 1) + (b * P).scale(_Q_M2)
    return a, b


@lru_cache(maxsize=None)
def _to_right(which, n, m):
    """Right coefficients (A, B) with dx A + dp B = x^n p^m * d(which)."""
    a, b = (QPoly.const(1), QPoly.zero()) if which == "x" else (QPoly.zero(), QPoly.const(1))
    # rightmost letter crosses first
    for _ in range(m):
        a, b = (P * a).scale(_Q_1), (X * a).scale(_Q_2 - 1) + (P * b).scale(_Q_2)
    for _ in range(n):
        a, b = (X * a).scale(_Q_2), (X * b).scale(_Q_1)
    return a, b


def _convert(cx, cp, table):
    ax, ap = QPoly.zero(), QPoly.zero()
    for which, coeff in (("x", cx), ("p", cp)):
        for (n, m), c in coeff.terms.items():
            u, v = table(which, n, m)
            ax = ax + u.scale(c)
            ap = ap + v.scale(c)
    return ax, ap


@dataclass(frozen=True, eq=False)
class QOneForm:
    """``dx * coeff_x + dp * coeff_p`` (side R) or ``coeff_x dx + coeff_p dp`` (side L)."""

    coeff_x: QPoly
    coeff_p: QPoly
    side: Side = Side.RIGHT

    def __add__(self, other):
        other = convert_form(other, self.side)
        return QOneForm(self.coeff_x + other.coeff_x, self.coeff_p + other.coeff_p, self.side)

    def __eq__(self, other):
        if not isinstance(other, QOneForm):
            return NotImplemented
        other = convert_form(other, self.side)
        return self.coeff_x == other.coeff_x and self.coeff_p == other.coeff_p

    __hash__ = None

    def to_json(self):
        return {"side": self.side.value, "dx": self.coeff_x.to_json(), "dp": self.coeff_p.to_json()}

    def to_text(self):
        if self.side is Side.RIGHT:
            return f"dx*({self.coeff_x.to_text()}) + dp*({self.coeff_p.to_text()})"
        return f"({self.coeff_x.to_text()})*dx + ({self.coeff_p.to_text()})*dp"


def convert_form(form, side):
    side = Side(side)
    if form.side is side:
        return form
    table = _to_left if side is Side.LEFT else _to_right
    cx, cp = _convert(form.coeff_x, form.coeff_p, table)
    return QOneForm(cx, cp, side)


def differential(f):
    """``df = dx (dx f)^R + dp (dp f)^R``."""
    return QOneForm(partial_right(f, "x"), partial_right(f, "p"), Side.RIGHT)


def partial_left(f, direction):
    """Left derivative, read off from ``df`` rewritten with coefficients on the left."""
    _dir(direction)
    form = convert_form(differential(f), Side.LEFT)
    return form.coeff_x if direction == "x" else form.coeff_p


@dataclass(frozen=True, eq=False)
class QVector:
    """Vector field ``coeff_x d/dx + coeff_p d/dp`` with coefficients on the left."""

    coeff_x: QPoly
    coeff_p: QPoly

    def __eq__(self, other):
        if not isinstance(other, QVector):
            return NotImplemented
        return self.coeff_x == other.coeff_x and self.coeff_p == other.coeff_p

    __hash__ = None

    def to_json(self):
        return {"x": self.coeff_x.to_json(), "p": self.coeff_p.to_json()}


def hamiltonian_field(f):
    """``X_f = q^(1/2) (dp f)^L d/dx - q^(-1/2) (dx f)^L d/dp``."""
    form = convert_form(differential(f), Side.LEFT)
    return QVector(form.coeff_p.scale(qpow(Fraction(1, 2))), form.coeff_x.scale(-qpow(Fraction(-1, 2))))


def contract(vector, form):
    """Pair left vector coefficients with right form coefficients."""
    form = convert_form(form, Side.RIGHT)
    return vector.coeff_x * form.coeff_x + vector.coeff_p * form.coeff_p


@dataclass(frozen=True, eq=False)
class QTwoForm:
    """``coeff * dx ^ dp``; the basis two-form ``dp ^ dx`` equals ``-q^(-1) dx ^ dp``."""

    coeff: QPoly

    def to_json(self):
        return {"dx^dp": self.coeff.to_json()}


def wedge(first, second):
    """Wedge of two basis differentials, as a multiple of ``dx ^ dp``."""
    _dir(first)
    _dir(second)
    if first == second:
        return QTwoForm(QPoly.zero())
    if first == "x":
        return QTwoForm(QPoly.const(1))
    return QTwoForm(QPoly.const(-qpow(-1)))


def symplectic_form():
    """``omega = q^(-1/2) dx ^ dp``."""
    return QTwoForm(QPoly.const(qpow(Fraction(-1, 2))))


def interior(vector, two_form):
    """Left one-form ``i_X omega`` for a constant two-form."""
    if not two_form.coeff.is_constant():
        raise ValueError("interior product implemented for constant two-forms only")
    c = two_form.coeff.constant()
    # i_{d/dx}(dx^dp) = dp, i_{d/dp}(dx^dp) = -q^(-1) dx
    return QOneForm(vector.coeff_p.scale(-c * qpow(-1)), vector.coeff_x.scale(c), Side.LEFT)


def solve_hamiltonian_field(f, omega=None):
    """Vector field X with ``i_X omega = df``, solved directly."""
    omega = omega or symplectic_form()
    if not omega.coeff.is_constant() or omega.coeff.constant().is_zero():
        raise ValueError("two-form must be a nonzero constant")
    c = omega.coeff.constant()
    form = convert_form(differential(f), Side.LEFT)
    return QVector(form.coeff_p.scale(ONE / c), form.coeff_x.scale(-qpow(1) / c))


@dataclass
class FieldNormalization:
    """Comparison of the prescribed field with the directly solved one."""

    x_component_agrees: bool
    p_ratio: ScalarExpr | None

    @property
    def consistent(self):
        return self.x_component_agrees and (self.p_ratio is None or self.p_ratio == ONE)

    def to_json(self):
        return {
            "x_component_agrees": self.x_component_agrees,
            "p_ratio": None if self.p_ratio is None else self.p_ratio.to_text(),
            "consistent": self.consistent,
        }


def field_normalization(f, omega=None):
    """Report the factor between solved and prescribed d/dp components."""
    given, solved = hamiltonian_field(f), solve_hamiltonian_field(f, omega)
    ratio = None
    if not given.coeff_p.is_zero():
        n, m = next(iter(given.coeff_p.terms))
        ratio = solved.coeff_p.coefficient(n, m) / given.coeff_p.coefficient(n, m)
        if given.coeff_p.scale(ratio) != solved.coeff_p:
            raise ArithmeticError("solved and prescribed fields are not proportional")
    elif not solved.coeff_p.is_zero():
        raise ArithmeticError("solved field has a d/dp part the prescribed one lacks")
    return FieldNormalization(given.coeff_x == solved.coeff_x, ratio)


def qpb_direct(f, g):
    """``{f, g} = q^(1/2) (dp g)^L (dx f)^R - q^(-1/2) (dx g)^L (dp f)^R``."""
    lg = convert_form(differential(g), Side.LEFT)
    rf = differential(f)
    return (lg.coeff_p * rf.coeff_x).scale(qpow(Fraction(1, 2))) - (lg.coeff_x * rf.coeff_p).scale(
        qpow(Fraction(-1, 2))
    )


def qpb_contract(f, g):
    """``{f, g} = i_{X_g} df``."""
    return contract(hamiltonian_field(g), differential(f))


def structure_constants():
    """Brackets of the generators; all are scalars."""
    return {(a, b): qpb_direct(GENERATORS[a], GENERATORS[b]).constant() for a in "xp" for b in "xp"}


def jacobi_generators():
    """Jacobiator of every ordered triple of generators (each should vanish)."""
    out = {}
    for a in "xp":
        for b in "xp":
            for c in "xp":
                f, g, h = GENERATORS[a], GENERATORS[b], GENERATORS[c]
                j = qpb_direct(f, qpb_direct(g, h)) + qpb_direct(g, qpb_direct(h, f)) + qpb_direct(
                    h, qpb_direct(f, g)
                )
                out[a + b + c] = j
    return out
