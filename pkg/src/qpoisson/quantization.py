"""One-dimensional q-Heisenberg operators on polynomials in x."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import I, ONE, ScalarExpr, qint1, qpow
from .linop import LinOperator
from .qcalculus import qpb_direct, X as QX, P as QP
from .report import Report

HALF = Fraction(1, 2)


def _op(N, action, shift=0):
    return LinOperator.from_action(1, N, lambda e: action(e[0]), shift)


@dataclass
class QuantumOps:
    N: int
    one: LinOperator
    d: LinOperator
    Lam: LinOperator
    Lam_inv: LinOperator
    X: LinOperator
    P: LinOperator
    P_dag: LinOperator
    p: LinOperator
    x: LinOperator


def build_ops(N):
    """Operators on {x^n : n <= N}."""
    if N < 2:
        raise ValueError("N must be >= 2")
    one = LinOperator.identity(1, N)
    d = _op(N, lambda n: {(n - 1,): qint1(n)} if n else {}, -1)
    # Lambda x^n = q^(-1/2-n) x^n, from (1 + (q-1) x d) x^n = q^n x^n
    lam = _op(N, lambda n: {(n,): qpow(-HALF - n)})
    lam_inv = _op(N, lambda n: {(n,): qpow(HALF + n)})
    xmul = _op(N, lambda n: {(n + 1,): ONE}, 1)
    P = (-I) * d
    P_dag = (-I * qpow(-HALF)) * (lam @ d)
    p = (P + P_dag).scale(ScalarExpr.const(Fraction(1, 2)))
    x = (2 * qpow(1) / (1 + qpow(1))) * xmul
    return QuantumOps(N, one, d, lam, lam_inv, xmul, P, P_dag, p, x)


def qcommutator(A, B):
    """[A, B]_q = q^(1/2) A B - q^(-1/2) B A."""
    return qpow(HALF) * (A @ B) - qpow(-HALF) * (B @ A)


def _check(report, name, lhs, rhs):
    bad = lhs.first_difference(rhs)
    report.add(name, bad is None, None if bad is None else f"fails on x^{bad[0]}")


def verify_heisenberg(N):
    """Deformed Heisenberg identities, exact on the degree-compatible subspace."""
    if N < 3:
        raise ValueError("N must be >= 3")
    o = build_ops(N)
    r = Report("quantization")
    xp, px = qcommutator(o.x, o.p), qcommutator(o.p, o.x)
    _check(r, "[x,p]_q = i Lambda", xp, I * o.Lam)
    _check(r, "Lambda x = q^(-1) x Lambda", o.Lam @ o.x, qpow(-1) * (o.x @ o.Lam))
    _check(r, "Lambda p = q p Lambda", o.Lam @ o.p, qpow(1) * (o.p @ o.Lam))
    _check(r, "[p,x]_q = -i Lambda^(-1)", px, (-I) * o.Lam_inv)
    _check(r, "[x,p]_q [p,x]_q = 1", xp @ px, o.one)
    _check(r, "Lambda Lambda^(-1) = 1", o.Lam @ o.Lam_inv, o.one)
    resolvent = o.Lam @ (o.one + (qpow(1) - 1) * (o.X @ o.d))
    _check(r, "Lambda (1 + (q-1) x d) = q^(-1/2)", resolvent, qpow(-HALF) * o.one)
    return r


def classical_limit(N):
    """At q = 1 the position is x times and the momentum is -i d/dx."""
    o = build_ops(N)
    r = Report("quantization-classical")
    plain_d = _op(N, lambda n: {(n - 1,): ScalarExpr.const(n)} if n else {}, -1)
    _check(r, "x -> x", o.x.classical(), o.X)
    _check(r, "p -> -i d/dx", o.p.classical(), (-I) * plain_d)
    _check(r, "[x,p]_q -> i", qcommutator(o.x, o.p).classical(), I * o.one)
    _check(r, "Lambda -> 1", o.Lam.classical(), o.one)
    return r


def substitute(value, ops):
    """Formal replacement q^(k/2) -> i Lambda^k for odd k on a scalar c * q^(k/2)."""
    term = value.as_term()
    if term is None:
        raise ValueError(f"{value} is not a single power of q^(1/2)")
    c, mono = term
    if any(name != "s" for name, _ in mono):
        raise ValueError(f"{value} depends on parameters other than q")
    c, k = ScalarExpr.const(c), (mono[0][1] if mono else 0)
    if k == 0:
        return c * ops.one
    if k % 2 == 0:
        raise ValueError("the formal rule applies to half-integer powers of q only")
    base = ops.Lam if k > 0 else ops.Lam_inv
    op = ops.one
    for _ in range(abs(k)):
        op = op @ base
    return (c * I) * op


@dataclass
class CorrespondenceRow:
    classical: str
    classical_value: str
    quantum: str
    substituted: str
    status: str

    def to_json(self):
        return dict(self.__dict__)


def correspondence_table(N=8):
    """Classical bracket values next to the quantum commutators they map to."""
    o = build_ops(N)
    xp_c = qpb_direct(QX, QP).constant()
    px_c = qpb_direct(QP, QX).constant()
    xp_q, px_q = qcommutator(o.x, o.p), qcommutator(o.p, o.x)
    rows = []

    def row(label, value, qlabel, qop, sub_label, sub_op):
        ok = qop.first_difference(sub_op) is None
        rows.append(CorrespondenceRow(label, value.to_text(), qlabel, sub_label,
                                      "match" if ok else "structurally different"))

    row("{x,p}_q", xp_c, "[x,p]_q", xp_q, "i*Lambda", substitute(xp_c, o))
    row("{p,x}_q", px_c, "[p,x]_q", px_q, "-i*Lambda^(-1)", substitute(px_c, o))
    prod = xp_c * px_c
    row("{x,p}_q*{p,x}_q", prod, "[x,p]_q*[p,x]_q", xp_q @ px_q, prod.to_text() + "*identity", substitute(prod, o))
    return rows


EXPECTED_STATUS = ("match", "match", "structurally different")


def correspondence_report(N=8):
    """Each row passes when its status is the expected one (the product differs by i^2)."""
    r = Report("correspondence")
    for row, expected in zip(correspondence_table(N), EXPECTED_STATUS):
        r.add(f"{row.classical} <-> {row.quantum}", row.status == expected, row.status)
    return r


def heisenberg_equation(O, H):
    """Formal q-Heisenberg equation for operator names ``O`` and ``H``."""
    return f"d{O}/dt = i*(q^(1/2)*{O}*{H} - q^(-1/2)*{H}*{O}) + partial_t {O}"
