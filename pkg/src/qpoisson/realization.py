"""Jackson-derivative and dilatation realization of the two-dimensional calculus.

Generators act on commutative polynomials in (x, p):
x -> x, p -> p D_x, dx -> J_x, dp -> J_p D_x where D_x f(x, p) = f(q x, p)
and J are Jackson derivatives.
"""

from __future__ import annotations

from .coeff import ONE, qint, qpow
from .errors import DegreeOverflowError
from .linop import LinOperator
from .qalgebra import shadow
from .qcalculus import partial_right
from .report import Report

GENERATORS = ("x", "p", "dx", "dp", "Dx", "Jp")


def _action(gen):
    if gen == "x":
        return (lambda e: {(e[0] + 1, e[1]): ONE}), 1
    if gen == "p":
        return (lambda e: {(e[0], e[1] + 1): qpow(e[0])}), 1
    if gen == "dx":
        return (lambda e: {(e[0] - 1, e[1]): qint(e[0])} if e[0] else {}), -1
    if gen == "dp":
        return (lambda e: {(e[0], e[1] - 1): qpow(e[0]) * qint(e[1])} if e[1] else {}), -1
    if gen == "Dx":
        return (lambda e: {e: qpow(e[0])}), 0
    if gen == "Jp":
        return (lambda e: {(e[0], e[1] - 1): qint(e[1])} if e[1] else {}), -1
    raise ValueError(f"unknown generator {gen!r}; expected one of {GENERATORS}")


def realize(gen, N):
    """Truncated matrix of a realized generator on {x^a p^b : a + b <= N}."""
    if N < 1:
        raise ValueError("N must be >= 1")
    action, shift = _action(gen)
    return LinOperator.from_action(2, N, action, shift)


def relation_operators(N):
    """Each checked relation as an operator that must vanish."""
    x, p, dx, dp = (realize(g, N) for g in ("x", "p", "dx", "dp"))
    one = LinOperator.identity(2, N)
    q1, q2 = qpow(1), qpow(2)
    return {
        "p x - q x p": p @ x - q1 * (x @ p),
        "dx x - 1 - q^2 x dx": dx @ x - one - q2 * (x @ dx),
        "dx p - q p dx": dx @ p - q1 * (p @ dx),
        "dp x - q x dp": dp @ x - q1 * (x @ dp),
        "dp p - 1 - q^2 p dp - (q^2-1) x dx": dp @ p - one - q2 * (p @ dp) - (q2 - 1) * (x @ dx),
        "dp dx - q^(-1) dx dp": dp @ dx - qpow(-1) * (dx @ dp),
    }


def _zero_report(report, ops):
    for name, op in ops.items():
        bad = op.first_difference(op.scale(0))
        report.add(name, bad is None, None if bad is None else f"fails on x^{bad[0]} p^{bad[1]}")
    return report


def verify_relations(N, classical=False):
    """Check the six calculus relations exactly on the truncated basis."""
    if N < 2:
        raise ValueError("N must be >= 2")
    ops = relation_operators(N)
    if classical:
        ops = {k: v.classical() for k, v in ops.items()}
    report = _zero_report(Report("realization"), ops)
    Jx, D = realize("dx", N), realize("Dx", N)
    exch = Jx @ D - qpow(1) * (D @ Jx)
    if classical:
        exch = exch.classical()
    return _zero_report(report, {"J_x D_x - q D_x J_x": exch})


COMMUTING_PAIRS = (("x", "p"), ("dx", "dp"), ("x", "dp"), ("p", "dx"), ("x", "Dx"), ("p", "Dx"))


def classical_commutators(N):
    """Commutators of generator pairs that commute classically, evaluated at q = 1."""
    ops = {g: realize(g, N).classical() for g in ("x", "p", "dx", "dp", "Dx")}
    return {f"[{a},{b}]": ops[a] @ ops[b] - ops[b] @ ops[a] for a, b in COMMUTING_PAIRS}


def crosscheck_derivative(f, N):
    """Compare symbolic right derivatives with the realized operators on shadow(f)."""
    if f.degree() > N:
        raise DegreeOverflowError(f"degree {f.degree()} exceeds truncation {N}")
    vec = shadow(f).terms
    report = Report("crosscheck")
    for direction in ("x", "p"):
        expected = shadow(partial_right(f, direction)).terms
        got = realize("d" + direction, N).apply(vec)
        keys = set(expected) | set(got)
        ok = all(expected.get(k, 0) == got.get(k, 0) for k in keys) if keys else True
        report.add(f"partial_{direction}", ok)
    return report
