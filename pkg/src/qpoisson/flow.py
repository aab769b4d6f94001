"""Fixed-step RK4 integration of the commutative shadow of the q-Hamilton flow."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .coeff import eval_real
from .dynamics import HamiltonianSpec, effective_frequency, effective_mass, find_conserved, hamilton_equations
from .errors import NonFiniteStateError, UnsupportedPotentialError
from .qalgebra import shadow

INTERPRETATION = (
    "commutative shadow: symbolic coefficients are fixed on the quantum plane, "
    "then x and p are treated as commuting real numbers"
)


def _compile(f, bindings, q_value):
    """Shadow polynomial as a list of (coeff, a, b) with float coefficients."""
    return [(eval_real(c, bindings, q_value), a, b) for (a, b), c in sorted(shadow(f).terms.items())]


def _evaluate(terms, x, p):
    return sum(c * x**a * p**b for c, a, b in terms)


@dataclass
class Trajectory:
    t: list
    x: list
    p: list
    H: list
    Eq: list
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    def rows(self):
        return zip(self.t, self.x, self.p, self.H, self.Eq)

    def to_csv(self, target=None):
        """Write ``t,x,p,H,Eq`` rows at 17 significant digits; returns the text if no target."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "x", "p", "H", "Eq"])
        for row in self.rows():
            writer.writerow(["%.17g" % v for v in row])
        text = buf.getvalue()
        if target is None:
            return text
        if hasattr(target, "write"):
            target.write(text)
        else:
            with open(target, "w", newline="") as fh:
                fh.write(text)
        return text


def integrate(H: HamiltonianSpec, q_value, bindings, x0, p0, dt, steps):
    """Classic RK4 on xdot = shadow(q^(1/2) (dp H)^L), pdot = shadow(-q^(-1/2) (dx H)^L)."""
    if q_value <= 0:
        raise ValueError("q must be positive")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    eqs = hamilton_equations(H)
    fx = _compile(eqs.xdot, bindings, q_value)
    fp = _compile(eqs.pdot, bindings, q_value)
    h_terms = _compile(H.to_qpoly(), bindings, q_value)
    e_terms = _compile(find_conserved(H), bindings, q_value)

    def rhs(x, p):
        return _evaluate(fx, x, p), _evaluate(fp, x, p)

    x, p = float(x0), float(p0)
    ts, xs, ps, hs, es = [0.0], [x], [p], [_evaluate(h_terms, x, p)], [_evaluate(e_terms, x, p)]
    for k in range(1, steps + 1):
        try:
            k1x, k1p = rhs(x, p)
            k2x, k2p = rhs(x + 0.5 * dt * k1x, p + 0.5 * dt * k1p)
            k3x, k3p = rhs(x + 0.5 * dt * k2x, p + 0.5 * dt * k2p)
            k4x, k4p = rhs(x + dt * k3x, p + dt * k3p)
            x = x + dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
            p = p + dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
            if not (math.isfinite(x) and math.isfinite(p)):
                raise NonFiniteStateError(k, (x, p))
            h, e = _evaluate(h_terms, x, p), _evaluate(e_terms, x, p)
        except OverflowError:
            raise NonFiniteStateError(k, (x, p)) from None
        ts.append(k * dt)
        xs.append(x)
        ps.append(p)
        hs.append(h)
        es.append(e)
    meta = {
        "interpretation": INTERPRETATION,
        "q": q_value,
        "dt": dt,
        "steps": steps,
        "x0": float(x0),
        "p0": float(p0),
        "bindings": dict(sorted((bindings or {}).items())),
        "xdot": eqs.xdot.to_text(),
        "pdot": eqs.pdot.to_text(),
    }
    return Trajectory(ts, xs, ps, hs, es, meta)


def rescaled_parameters(H, q_value, bindings):
    """Numeric (m_q, w_q) for a free or harmonic Hamiltonian; w_q is None when free."""
    m = eval_real(H.mass, bindings, 1.0)
    mq = eval_real(effective_mass(H.mass), bindings, q_value)
    if H.is_free:
        return mq, None
    c2 = H.harmonic_coefficient()
    if c2 is None:
        raise UnsupportedPotentialError("closed form available for free and harmonic potentials only")
    k = eval_real(c2, bindings, 1.0)
    if k <= 0 or m <= 0:
        raise UnsupportedPotentialError("harmonic reference needs positive mass and stiffness")
    w = math.sqrt(2.0 * k / m)
    # effective_frequency is linear in w, so evaluate it at w = 1 and rescale
    wq = w * eval_real(effective_frequency(1), {}, q_value)
    return mq, wq


def analytic_reference(H, q_value, bindings, x0, p0, t):
    """Exact solution of the rescaled shadow system at time ``t``."""
    mq, wq = rescaled_parameters(H, q_value, bindings)
    if wq is None:
        return x0 + p0 * t / mq, p0
    c, s = math.cos(wq * t), math.sin(wq * t)
    return x0 * c + p0 / (mq * wq) * s, p0 * c - mq * wq * x0 * s


def shadow_energy(H, q_value, bindings, x, p):
    """p^2 / 2 m_q + m_q w_q^2 x^2 / 2, the shadow system's own invariant."""
    mq, wq = rescaled_parameters(H, q_value, bindings)
    return p * p / (2 * mq) + (0.0 if wq is None else 0.5 * mq * wq * wq * x * x)


def max_error(traj, H, q_value, bindings):
    """Largest deviation of x and p from the analytic reference along a trajectory."""
    x0, p0 = traj.x[0], traj.p[0]
    worst = 0.0
    for t, x, p in zip(traj.t, traj.x, traj.p):
        xr, pr = analytic_reference(H, q_value, bindings, x0, p0, t)
        worst = max(worst, abs(x - xr), abs(p - pr))
    return worst
