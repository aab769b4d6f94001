"""Independent reference implementations used as test oracles."""

from qpoisson.coeff import ScalarExpr
from qpoisson.qalgebra import QPoly, shadow


def classical_pb(f, g):
    """Oracle: d_x f d_p g - d_p f d_x g on commutative shadows at q = 1."""
    F, G = shadow(f).classical().terms, shadow(g).classical().terms

    def d(poly, k):
        out = {}
        for (a, b), c in poly.items():
            e = (a, b)[k]
            if e:
                key = (a - 1, b) if k == 0 else (a, b - 1)
                out[key] = out.get(key, ScalarExpr.const(0)) + c * e
        return out

    def prod(u, v):
        out = {}
        for (a, b), c in u.items():
            for (e, f_), c2 in v.items():
                key = (a + e, b + f_)
                out[key] = out.get(key, ScalarExpr.const(0)) + c * c2
        return out

    left, right = prod(d(F, 0), d(G, 1)), prod(d(F, 1), d(G, 0))
    return QPoly({k: left.get(k, 0) - right.get(k, 0) for k in set(left) | set(right)})
