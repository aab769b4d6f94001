"""The bracket matrix, the defining matrix relation and invariance checks.

Transformations are ``x' = x a + p c``, ``p' = x b + p d`` with entries that
commute with the plane but not among themselves.  Candidate entry algebras
are supplied as rewriting systems and tested, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import ONE, ZERO, ScalarExpr, qpow
from .qalgebra import QPoly
from .qcalculus import GENERATORS, Side, convert_form, differential, qpb_direct
from .report import Report
from .rewriting import RelationSet, Rule, nc, nc_add, nc_equal, nc_mul, nc_scale, nc_text

HALF = Fraction(1, 2)
INDEX = ("x", "p")


@dataclass(frozen=True)
class JqMatrix:
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def classical(self):
        return JqMatrix(tuple(tuple(v.classical() for v in row) for row in self.entries))

    def transpose(self):
        e = self.entries
        return JqMatrix(((e[0][0], e[1][0]), (e[0][1], e[1][1])))

    def equals(self, other):
        return all(self[i, j] == other[i, j] for i in range(2) for j in range(2))

    def to_json(self):
        return [[v.to_text() for v in row] for row in self.entries]


EPSILON = JqMatrix(((ZERO, ONE), (-ONE, ZERO)))


def jq():
    """Bracket matrix with J[i][j] = {x^i, x^j}_q."""
    return JqMatrix(((ZERO, qpow(HALF)), (-qpow(-HALF), ZERO)))


def c_matrix(r=None):
    """C_r^{ij} = eps^{ij} r^(-eps^{ij}); default r = q^(1/2)."""
    r = qpow(HALF) if r is None else r
    return JqMatrix(((ZERO, ONE / r), (-r, ZERO)))


def defining_matrix():
    """-C_{q'} with q' = q^(1/2), the matrix entering the defining relation literally."""
    c = c_matrix()
    return JqMatrix(tuple(tuple(-v for v in row) for row in c.entries))


def bracket_matrix():
    """All four generator brackets computed by the calculus."""
    return JqMatrix(tuple(tuple(qpb_direct(GENERATORS[a], GENERATORS[b]).constant() for b in INDEX) for a in INDEX))


def bracket_from_matrix(f, g, J=None):
    """sum_{i,j} (d_j g)^L J^{ij} (d_i f)^R."""
    J = J or jq()
    lg = convert_form(differential(g), Side.LEFT)
    rf = differential(f)
    left = {"x": lg.coeff_x, "p": lg.coeff_p}
    right = {"x": rf.coeff_x, "p": rf.coeff_p}
    out = QPoly.zero()
    for i, a in enumerate(INDEX):
        for j, b in enumerate(INDEX):
            if not J[i, j].is_zero():
                out = out + (left[b] * right[a]).scale(J[i, j])
    return out


@dataclass
class TMatrix:
    """Entries T_1^1 = a, T_1^2 = b, T_2^1 = c, T_2^2 = d as word polynomials."""

    a: dict
    b: dict
    c: dict
    d: dict

    @classmethod
    def generic(cls):
        return cls(nc((1, "a")), nc((1, "b")), nc((1, "c")), nc((1, "d")))

    @classmethod
    def identity(cls):
        return cls(nc((1, "")), {}, {}, nc((1, "")))

    @classmethod
    def numeric(cls, a, b, c, d):
        return cls(nc((a, "")), nc((b, "")), nc((c, "")), nc((d, "")))

    def entry(self, r, i):
        """T_r^i with r, i in {0, 1}."""
        return ((self.a, self.b), (self.c, self.d))[r][i]


def _signed_report(suite, residuals):
    rep = Report(suite)
    for (i, j), res in sorted(residuals.items()):
        rep.add(f"({i + 1},{j + 1})", not res, None if not res else nc_text(res))
    return rep


def ctt_residuals(T, R, J=None, classical=False, step_limit=None):
    """Normal forms of sum_{r,s} T_r^i J^{rs} T_s^j - J^{ij}."""
    J = J or defining_matrix()
    if classical:
        J = J.classical()
    out = {}
    for i in range(2):
        for j in range(2):
            terms = [nc_scale(nc_mul(T.entry(r, i), T.entry(s, j)), J[r, s]) for r in range(2) for s in range(2)]
            res = nc_add(*terms, nc((-J[i, j], "")))
            out[(i, j)] = _finish(res, R, classical, step_limit)
    return out


def invariance_residuals(T, R, classical=False, step_limit=None):
    """Normal forms of {x'^i, x'^j}_q - {x^i, x^j}_q with x'^i = x^k T_k^i."""
    S = {(k, l): qpb_direct(GENERATORS[INDEX[k]], GENERATORS[INDEX[l]]) for k in range(2) for l in range(2)}
    out = {}
    for i in range(2):
        for j in range(2):
            terms = []
            for k in range(2):
                for l in range(2):
                    s = S[(k, l)]
                    if not s.is_constant():
                        raise ArithmeticError("generator brackets must be scalars")
                    # the coefficient of the second argument stands to the left
                    terms.append(nc_scale(nc_mul(T.entry(l, j), T.entry(k, i)), s.constant()))
            target = S[(i, j)].constant()
            res = nc_add(*terms, nc((-target, "")))
            out[(i, j)] = _finish(res, R, classical, step_limit)
    return out


def _finish(res, R, classical, step_limit):
    if classical:
        res = {w: c.classical() for w, c in res.items()}
    if R is not None:
        res = R.reduce(res) if step_limit is None else R.reduce(res, step_limit)
    if classical:
        res = {w: c.classical() for w, c in res.items() if not c.classical().is_zero()}
    return res


def check_ctt(T, R, J=None, classical=False, step_limit=None):
    return _signed_report("ctt", ctt_residuals(T, R, J, classical, step_limit))


def check_bracket_invariance(T, R, classical=False, step_limit=None):
    return _signed_report("invariance", invariance_residuals(T, R, classical, step_limit))


def reports_coincide(T, R, classical=False):
    """Invariance entry (i, j) against the defining-relation entry (j, i)."""
    ctt = ctt_residuals(T, R, classical=classical)
    inv = invariance_residuals(T, R, classical=classical)
    return all(nc_equal(inv[(i, j)], ctt[(j, i)]) for i in range(2) for j in range(2))


# candidate entry algebras

def _r(expr):
    return ScalarExpr.const(expr)


def manin_relations(r, name, determinant=False):
    """Quantum-matrix relations with parameter r, optionally with ad - r bc = 1."""
    ri = ONE / r
    rules = [
        Rule("ba", nc((ri, "ab"))),
        Rule("ca", nc((ri, "ac"))),
        Rule("db", nc((ri, "bd"))),
        Rule("dc", nc((ri, "cd"))),
    ]
    if not determinant:
        rules += [Rule("cb", nc((1, "bc"))), Rule("da", nc((1, "ad"), (-(r - ri), "bc")))]
        return RelationSet(name, rules, description="ab=r ba, ac=r ca, bd=r db, cd=r dc, bc=cb, ad-da=(r-1/r) bc")
    # bc is eliminated through the determinant, so b and c carry weight
    rules += [
        Rule("bc", nc((ri, "ad"), (-ri, ""))),
        Rule("cb", nc((ri, "ad"), (-ri, ""))),
        Rule("da", nc((ri * ri, "ad"), (1 - ri * ri, ""))),
    ]
    return RelationSet(
        name, rules, weights={"b": 1, "c": 1},
        description="quantum-matrix relations with parameter r and ad - r bc = 1",
    )


def two_parameter_relations(p, r, name):
    """Two-parameter quantum matrices: ab=p ba, cd=p dc, ac=r ca, bd=r db, r cb=p bc, ad-da=(p-1/r) bc."""
    rules = [
        Rule("ba", nc((ONE / p, "ab"))),
        Rule("dc", nc((ONE / p, "cd"))),
        Rule("ca", nc((ONE / r, "ac"))),
        Rule("db", nc((ONE / r, "bd"))),
        Rule("cb", nc((p / r, "bc"))),
        Rule("da", nc((1, "ad"), (-(p - ONE / r), "bc"))),
    ]
    return RelationSet(name, rules, description=two_parameter_relations.__doc__.split(":", 1)[1].strip())


def commutative_relations(determinant=False):
    rules = [Rule(lhs, nc((1, lhs[::-1]))) for lhs in ("ba", "ca", "da", "cb", "db", "dc")]
    if not determinant:
        return RelationSet("commutative", rules, description="all entries commute")
    rules = [r for r in rules if r.lhs != "cb"] + [
        Rule("bc", nc((1, "ad"), (-1, ""))),
        Rule("cb", nc((1, "ad"), (-1, ""))),
    ]
    return RelationSet(
        "commutative-unimodular", rules, weights={"b": 1, "c": 1},
        description="all entries commute and ad - bc = 1",
    )


_PARAMS = {"q^(1/2)": qpow(HALF), "q": qpow(1), "q^(-1)": qpow(-1), "q^2": qpow(2)}


def candidate_relation_sets():
    """Candidates shipped for the symbolic experiment, keyed by name."""
    out = {}
    for label, r in _PARAMS.items():
        out[f"manin[r={label}]"] = manin_relations(r, f"manin[r={label}]")
        out[f"manin-det[r={label}]"] = manin_relations(r, f"manin-det[r={label}]", determinant=True)
    for pl, rl in (("q", "q^(1/2)"), ("q^(1/2)", "q")):
        name = f"two-parameter[p={pl},r={rl}]"
        out[name] = two_parameter_relations(_PARAMS[pl], _PARAMS[rl], name)
    return out


@dataclass
class CandidateResult:
    name: str
    terminating: bool
    confluent: bool
    ctt_passed: bool
    invariance_passed: bool
    reports_coincide: bool
    residuals: dict

    def to_json(self):
        return dict(self.__dict__)


def run_candidate(R, max_length=6):
    T = TMatrix.generic()
    term, _ = R.check_termination()
    conf, _ = R.check_confluence(max_length)
    ctt = check_ctt(T, R)
    inv = check_bracket_invariance(T, R)
    return CandidateResult(
        R.name, term, conf, ctt.passed, inv.passed, reports_coincide(T, R),
        {c.name: c.detail or "0" for c in ctt.checks},
    )


def run_candidates(max_length=6):
    return [run_candidate(R, max_length) for R in candidate_relation_sets().values()]


def classical_invariance(a, b, c, d):
    """Exact s = 1 brackets of x' = a x + c p and p' = b x + d p for rational entries."""
    x, p = GENERATORS["x"], GENERATORS["p"]
    xs = x.scale(_r(a)) + p.scale(_r(c))
    ps = x.scale(_r(b)) + p.scale(_r(d))
    new = (xs, ps)
    eps = EPSILON
    return all(
        qpb_direct(new[i], new[j]).classical() == QPoly.const(eps[i, j]) for i in range(2) for j in range(2)
    )
