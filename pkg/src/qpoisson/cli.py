"""Command-line interface: ``qpoisson <verb> ...``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import dynamics, flow, quantization, realization, symplectic
from .coeff import eval_numeric, qpow, sym
from .errors import QPoissonError
from .parser import parse_qpoly, parse_scalar
from .qalgebra import QPoly
from .qcalculus import GENERATORS, field_normalization, jacobi_generators, qpb_contract, qpb_direct
from .report import Report

DEFAULT_PARAMS = ("m", "w")
EXIT_FAIL = 1
EXIT_DOMAIN = 3


# helpers ---------------------------------------------------------------------

def _bindings(args):
    out = {}
    for item in args.set or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise QPoissonError(f"--set expects NAME=VALUE, got {item!r}")
        out[name.strip()] = float(value)
    return out


def _params(args, extra=()):
    names = set(DEFAULT_PARAMS) | set(args.param or []) | set(_bindings(args)) | set(extra)
    return sorted(names)


def _fmt_num(z):
    if abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return "%.17g" % z.real
    return "(%.17g%+.17gj)" % (z.real, z.imag)


def _numeric_terms(f, args):
    bindings = _bindings(args)
    return [(n, m, eval_numeric(c, bindings, args.q)) for (n, m), c in f.sorted_terms()]


def _render_poly(f, args):
    """Text or JSON payload for a QPoly, symbolic or evaluated at --q."""
    if args.q is None:
        if args.json:
            return {"text": f.to_text(), "terms": f.to_json()}
        return f.to_text()
    terms = _numeric_terms(f, args)
    if args.json:
        return {
            "q": args.q,
            "terms": [{"n": n, "m": m, "value": [z.real, z.imag]} for n, m, z in terms],
        }
    if not terms:
        return "0"
    parts = []
    for n, m, z in terms:
        mono = "*".join(s for s in (f"x^{n}" if n else "", f"p^{m}" if m else "") if s)
        parts.append(_fmt_num(z) + ("*" + mono if mono else ""))
    return " + ".join(parts)


def _emit(payload, args):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(payload)


def _spec(args):
    extra = [args.mass] if args.mass.isidentifier() else []
    params = _params(args, extra)
    mass = parse_scalar(args.mass, params)
    potential = parse_qpoly(args.potential, params) if args.potential else QPoly.zero()
    return dynamics.HamiltonianSpec.from_qpoly(mass, potential)


# verbs -------------------------------------------------------------------------

def cmd_normalize(args):
    _emit(_render_poly(parse_qpoly(args.expr, _params(args)), args), args)
    return 0


def cmd_bracket(args):
    params = _params(args)
    f, g = parse_qpoly(args.f, params), parse_qpoly(args.g, params)
    _emit(_render_poly(qpb_direct(f, g), args), args)
    return 0


def cmd_hamilton(args):
    if args.expr:
        H = parse_qpoly(args.expr, _params(args))
    else:
        H = _spec(args).to_qpoly()
    eqs = dynamics.hamilton_equations(H)
    if args.json:
        _emit({"xdot": _render_poly(eqs.xdot, args), "pdot": _render_poly(eqs.pdot, args)}, args)
    else:
        print(f"xdot = {_render_poly(eqs.xdot, args)}")
        print(f"pdot = {_render_poly(eqs.pdot, args)}")
    return 0


def cmd_evolve_symbolic(args):
    params = _params(args)
    f, H = parse_qpoly(args.f, params), parse_qpoly(args.h, params)
    explicit = parse_qpoly(args.explicit, params) if args.explicit else None
    _emit(_render_poly(dynamics.time_derivative(f, H, explicit), args), args)
    return 0


def cmd_conserve(args):
    E = dynamics.find_conserved(_spec(args))
    _emit(_render_poly(E, args), args)
    return 0


def cmd_evolve(args):
    bindings = dict(_bindings(args))
    bindings.setdefault("m", args.m)
    bindings.setdefault("w", args.w)
    H = _spec(args)
    q_value = 1.0 if args.q is None else args.q
    traj = flow.integrate(H, q_value, bindings, args.x0, args.p0, args.dt, args.steps)
    if args.out:
        traj.to_csv(args.out)
    meta = dict(traj.metadata, rows=len(traj), out=args.out)
    if args.json:
        _emit(meta, args)
    elif args.out:
        print(f"wrote {len(traj)} rows to {args.out} ({meta['interpretation']})")
    else:
        sys.stdout.write(traj.to_csv())
    return 0


# verification suites ---------------------------------------------------------

def _random_qpoly(rng, degree, terms=4):
    out = {}
    for _ in range(terms):
        n = rng.randint(0, degree)
        m = rng.randint(0, degree - n)
        out[(n, m)] = qpow(Fraction(rng.randint(-3, 3), 2)) * rng.randint(-4, 4)
    return QPoly(out)


def suite_calculus(N):
    r = Report("calculus")
    x, p = GENERATORS["x"], GENERATORS["p"]
    xp, px = qpb_direct(x, p), qpb_direct(p, x)
    r.add("{x,p} = q^(1/2)", xp == QPoly.const(qpow(Fraction(1, 2))))
    r.add("{p,x} = -q^(-1/2)", px == QPoly.const(-qpow(Fraction(-1, 2))))
    r.add("{x,x} = {p,p} = 0", qpb_direct(x, x).is_zero() and qpb_direct(p, p).is_zero())
    r.add("{x,p} + q {p,x} = 0", (xp + px.scale(qpow(1))).is_zero())
    r.add("{x,p} {p,x} = -1", xp * px == QPoly.const(-1))
    r.add("Jacobi on generators", all(v.is_zero() for v in jacobi_generators().values()))
    rng = random.Random(7)
    ok = all(
        qpb_direct(f, g) == qpb_contract(f, g)
        for f, g in ((_random_qpoly(rng, min(N, 6)), _random_qpoly(rng, min(N, 6))) for _ in range(20))
    )
    r.add("direct and contraction routes agree", ok)
    norm = field_normalization(x * x * p)
    r.add(
        "solved field differs from the prescribed one by q^2 in d/dp",
        norm.x_component_agrees and norm.p_ratio == qpow(2),
        f"ratio {norm.p_ratio.to_text()}",
    )
    return r


def suite_dynamics(N):
    r = Report("dynamics")
    m, w = sym("m"), sym("w")
    mq, wq = dynamics.effective_mass(m), dynamics.effective_frequency(w)
    free = dynamics.HamiltonianSpec.free(m)
    eq = dynamics.hamilton_equations(free)
    r.add("free: xdot = p/m_q, pdot = 0", eq.xdot == QPoly.p().scale(1 / mq) and eq.pdot.is_zero())
    osc = dynamics.HamiltonianSpec.oscillator(m, w)
    eq = dynamics.hamilton_equations(osc)
    r.add("oscillator: pdot = -m_q w_q^2 x", eq.pdot == QPoly.x().scale(-mq * wq * wq))
    H = osc.to_qpoly()
    witness = (QPoly.p() * QPoly.x()).scale(qpow(Fraction(1, 2)) * (qpow(2) - 1) * wq * wq)
    r.add("{H,H} = q^(1/2)(q^2-1) w_q^2 p x", dynamics.time_derivative(H, H) == witness)
    E = dynamics.find_conserved(osc)
    r.add("E_q has x^2 coefficient m w^2/(2 q^2)", E.coefficient(2, 0) == m * w * w / (2 * qpow(2)))
    top = max(2, min(N, 8))
    spec = dynamics.HamiltonianSpec(m, [(n, sym(f"c{n}")) for n in range(1, top + 1)])
    d = dynamics.conserved_coefficients(spec)
    r.add(f"d_n = c_n q^(4-3n) up to n = {top}", all(d[n] == sym(f"c{n}") * qpow(4 - 3 * n) for n in d))
    return r


def suite_flow(N):
    r = Report("flow")
    osc = dynamics.HamiltonianSpec.oscillator(sym("m"), sym("w"))
    b = {"m": 1.0, "w": 1.0}
    t1 = flow.integrate(osc, 1.0, b, 1.0, 0.0, 1e-3, 10000)
    err1 = flow.max_error(t1, osc, 1.0, b)
    r.add("q = 1 tracks cos t within 1e-8", err1 < 1e-8, f"max error {err1:.3g}")
    t2 = flow.integrate(osc, 1.2, b, 1.0, 0.0, 1e-3, 10000)
    err2 = flow.max_error(t2, osc, 1.2, b)
    r.add("q = 1.2 tracks the rescaled solution within 1e-6", err2 < 1e-6, f"max error {err2:.3g}")
    coarse = flow.max_error(flow.integrate(osc, 1.2, b, 1.0, 0.5, 0.05, 200), osc, 1.2, b)
    fine = flow.max_error(flow.integrate(osc, 1.2, b, 1.0, 0.5, 0.025, 400), osc, 1.2, b)
    ratio = coarse / fine
    r.add("halving dt reduces the error about 16x", abs(ratio / 16 - 1) < 0.1, f"ratio {ratio:.3f}")
    return r


def suite_realization(N):
    rep = realization.verify_relations(N)
    rng = random.Random(11)
    ok = all(realization.crosscheck_derivative(_random_qpoly(rng, min(N, 8)), N).passed for _ in range(20))
    rep.add("derivative cross-check on random polynomials", ok)
    return rep


def suite_quantization(N):
    rep = quantization.verify_heisenberg(N)
    for c in quantization.classical_limit(N).checks + quantization.correspondence_report(min(N, 8)).checks:
        rep.checks.append(c)
    return rep


def suite_symplectic(N):
    r = Report("symplectic")
    r.add("jq at q = 1 is the symplectic unit", symplectic.jq().classical().equals(symplectic.EPSILON))
    r.add("bracket matrix equals jq", symplectic.bracket_matrix().equals(symplectic.jq()))
    rng = random.Random(5)
    ok = True
    for _ in range(100):
        a = Fraction(rng.choice([k for k in range(-9, 10) if k]), rng.randint(1, 9))
        b, c = Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        ok = ok and symplectic.classical_invariance(a, b, c, (1 + b * c) / a)
    r.add("random unimodular matrices preserve the q = 1 bracket", ok)
    for res in symplectic.run_candidates(max_length=min(N, 6)):
        r.add(
            f"candidate {res.name}: reports coincide",
            res.reports_coincide and res.terminating and res.confluent,
            "defining relation holds" if res.ctt_passed else "defining relation fails",
        )
    return r


SUITES = {
    "calculus": (suite_calculus, 6),
    "dynamics": (suite_dynamics, 8),
    "flow": (suite_flow, 0),
    "quantization": (suite_quantization, 20),
    "realization": (suite_realization, 12),
    "symplectic": (suite_symplectic, 6),
}


def cmd_verify(args):
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        fn, default = SUITES[name]
        reports.append(fn(args.max_degree or default))
    ok = all(rep.passed for rep in reports)
    if args.json:
        _emit({"passed": ok, "suites": [rep.to_json() for rep in reports]}, args)
    else:
        print("\n".join(rep.to_text() for rep in reports))
    return 0 if ok else EXIT_FAIL


# argument parsing --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--q", type=float, default=None, help="evaluate numerically at this q")
    common.add_argument("--param", action="append", metavar="NAME", help="declare a symbolic parameter")
    common.add_argument("--set", action="append", metavar="NAME=VALUE", help="numeric parameter binding")

    ham = argparse.ArgumentParser(add_help=False)
    ham.add_argument("--mass", default="m", help="mass expression (default m)")
    ham.add_argument("--potential", default=None, help="potential V(x)")

    ap = argparse.ArgumentParser(prog="qpoisson", description="q-deformed mechanics on the quantum plane")
    sub = ap.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("normalize", parents=[common], help="normal-order an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("bracket", parents=[common], help="q-Poisson bracket {f, g}")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("hamilton", parents=[common, ham], help="equations of motion")
    s.add_argument("expr", nargs="?", help="Hamiltonian (otherwise built from --mass/--potential)")
    s.set_defaults(func=cmd_hamilton)

    s = sub.add_parser("evolve-symbolic", parents=[common], help="time derivative {f, H}")
    s.add_argument("f")
    s.add_argument("h")
    s.add_argument("--explicit", default=None, help="explicit time derivative added verbatim")
    s.set_defaults(func=cmd_evolve_symbolic)

    s = sub.add_parser("conserve", parents=[common, ham], help="conserved energy for p^2/2m + V(x)")
    s.set_defaults(func=cmd_conserve)

    s = sub.add_parser("evolve", parents=[common, ham], help="numeric shadow trajectory")
    s.add_argument("--m", type=float, default=1.0, help="numeric mass (default %(default)s)")
    s.add_argument("--w", type=float, default=1.0, help="numeric frequency (default %(default)s)")
    s.add_argument("--x0", type=float, default=1.0, help="initial position (default %(default)s)")
    s.add_argument("--p0", type=float, default=0.0, help="initial momentum (default %(default)s)")
    s.add_argument("--dt", type=float, default=1e-3, help="time step (default %(default)s)")
    s.add_argument("--steps", type=int, default=1000, help="number of steps (default %(default)s)")
    s.add_argument("--out", default=None, help="CSV output path")
    s.set_defaults(func=cmd_evolve, potential_default="1/2*m*w^2*x^2")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", default="all", choices=["all"] + sorted(SUITES))
    s.add_argument("--max-degree", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "potential_default", None) and args.potential is None:
        args.potential = args.potential_default
    try:
        return args.func(args)
    except (QPoissonError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
