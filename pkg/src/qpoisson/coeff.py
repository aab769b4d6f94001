"""Exact coefficient field for the q-calculus.

Scalars are rational functions in the indeterminate ``s`` (with ``q = s**2``)
and user-declared commuting parameters, over the Gaussian rationals Q(i).

Polynomials are plain dicts mapping a monomial to a coefficient.  A monomial
is a tuple of ``(name, exponent)`` pairs sorted by name with nonzero
exponents; the exponent of ``s`` may be negative, parameter exponents never
are.  Coefficients are ``int``, ``Fraction`` or :class:`Gauss`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

from .errors import UnboundParameterError

S = "s"


class Gauss:
    """Gaussian rational ``re + im*i`` with ``im != 0``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _split(v):
        if isinstance(v, Gauss):
            return v.re, v.im
        return v, 0

    def __add__(self, other):
        a, b = self._split(other)
        return _c(Gauss(self.re + a, self.im + b))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._split(other)
        return _c(Gauss(self.re - a, self.im - b))

    def __rsub__(self, other):
        a, b = self._split(other)
        return _c(Gauss(a - self.re, b - self.im))

    def __mul__(self, other):
        a, b = self._split(other)
        return _c(Gauss(self.re * a - self.im * b, self.re * b + self.im * a))

    __rmul__ = __mul__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def __truediv__(self, other):
        a, b = self._split(other)
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return _c(Gauss((self.re * a + self.im * b) / n, (self.im * a - self.re * b) / n))

    def __rtruediv__(self, other):
        return Gauss(other, 0) / self

    def __eq__(self, other):
        a, b = self._split(other)
        return self.re == a and self.im == b

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"


def _c(v):
    """Normalize a coefficient to the narrowest representation."""
    if isinstance(v, Gauss):
        if v.im == 0:
            return _c(v.re)
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _cdiv(a, b):
    if isinstance(a, Gauss) or isinstance(b, Gauss):
        if not isinstance(a, Gauss):
            a = Gauss(a, 0)
        return a / b
    if b == 0:
        raise ZeroDivisionError("division by zero coefficient")
    return _c(Fraction(a) / b)


# -- monomials ---------------------------------------------------------------

def _mmul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        na, ea = a[i]
        nb, eb = b[j]
        if na == nb:
            e = ea + eb
            if e:
                out.append((na, e))
            i += 1
            j += 1
        elif na < nb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _minv(a):
    return tuple((n, -e) for n, e in a)


def _mdiv(a, b):
    """Return a/b if it has no negative parameter exponent, else None."""
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) - e
    if any(e < 0 and n != S for n, e in d.items()):
        return None
    return tuple(sorted((n, e) for n, e in d.items() if e))


def _mono_text(m):
    parts = []
    for name, e in sorted(m, key=lambda f: f[0] != S):
        if name == S:
            parts.append(qpow_text(Fraction(e, 2)))
        elif e == 1:
            parts.append(name)
        else:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def qpow_text(e):
    """Render ``q**e`` for a half-integer ``e``."""
    e = Fraction(e)
    if e == 1:
        return "q"
    if e.denominator == 1 and e > 0:
        return f"q^{e.numerator}"
    return f"q^({e})"


# -- polynomials (dict monomial -> coefficient) ------------------------------

def _padd(a, b, sign=1):
    r = dict(a)
    for m, c in b.items():
        v = r.get(m, 0) + c if sign > 0 else r.get(m, 0) - c
        if v == 0:
            r.pop(m, None)
        else:
            r[m] = _c(v)
    return r


def _pmul(a, b):
    r = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _mmul(m1, m2)
            r[m] = r.get(m, 0) + c1 * c2
    return {m: _c(c) for m, c in r.items() if c != 0}


def _pscale(a, c, m=()):
    return {_mmul(k, m): _c(v * c) for k, v in a.items()}


def _pvars(*polys):
    return sorted({n for p in polys for mono in p for n, _ in mono})


def _grlex_key(names):
    def key(mono):
        d = dict(mono)
        exps = tuple(d.get(n, 0) for n in names)
        return (sum(exps), exps)
    return key


def _lead(p, names=None):
    key = _grlex_key(names if names is not None else _pvars(p))
    return max(p, key=key)


def _min_exp(p, name):
    return min(dict(m).get(name, 0) for m in p)


def _exact_div(a, b):
    """Quotient a/b when b divides a exactly (Laurent in s), else None."""
    ka = -min(0, _min_exp(a, S))
    kb = -min(0, _min_exp(b, S))
    if ka:
        a = {_mmul(m, ((S, ka),)): c for m, c in a.items()}
    if kb:
        b = {_mmul(m, ((S, kb),)): c for m, c in b.items()}
    shift = kb - ka
    names = _pvars(a, b)
    key = _grlex_key(names)
    lb = max(b, key=key)
    cb = b[lb]
    q, r = {}, a
    unshift = ((S, shift),) if shift else ()
    while r:
        lr = max(r, key=key)
        mq = _mdiv(lr, lb)
        if mq is None or any(n == S and e < 0 for n, e in mq):
            return None
        cq = _cdiv(r[lr], cb)
        q[mq] = cq
        r = _padd(r, _pscale(b, cq, mq), -1)
    return {_mmul(m, unshift): c for m, c in q.items()}


def _s_slices(p):
    """Split p into {parameter monomial: {s exponent: coeff}}."""
    out = {}
    for mono, c in p.items():
        e = 0
        rest = []
        for n, k in mono:
            if n == S:
                e = k
            else:
                rest.append((n, k))
        out.setdefault(tuple(rest), {})[e] = c
    return out


def _upoly_rem(a, b):
    a = dict(a)
    db = max(b)
    lb = b[db]
    while a and max(a) >= db:
        da = max(a)
        f = _cdiv(a[da], lb)
        for e, c in b.items():
            v = a.get(e + da - db, 0) - f * c
            if v == 0:
                a.pop(e + da - db, None)
            else:
                a[e + da - db] = _c(v)
    return a


def _upoly_gcd(a, b):
    """Monic gcd of univariate polynomials {exponent: coeff} (exponents >= 0)."""
    while b:
        a, b = b, _upoly_rem(a, b)
    lc = a[max(a)]
    return {e: _cdiv(c, lc) for e, c in a.items()}


def _s_gcd(num, den):
    """Largest common factor of num and den that is a polynomial in s alone."""
    g = None
    for sl in list(_s_slices(num).values()) + list(_s_slices(den).values()):
        lo = min(sl)
        sl = {e - lo: c for e, c in sl.items()}
        g = sl if g is None else _upoly_gcd(g, sl)
        if len(g) == 1:
            return None
    return g


def _peval(p, env):
    total = 0j
    for mono, c in p.items():
        t = complex(c)
        for n, e in mono:
            try:
                # s^e is evaluated as q^(e/2) so integer powers of q stay exact
                t *= env[_Q_KEY] ** (e / 2) if n == S and _Q_KEY in env else env[n] ** e
            except KeyError:
                raise UnboundParameterError(n) from None
        total += t
    return total


def _coeff_text(c):
    if isinstance(c, Gauss):
        re, im = c.re, c.im
        imt = "i" if im == 1 else "-i" if im == -1 else f"{im}*i"
        if re == 0:
            return imt
        return f"({re}{'' if imt.startswith('-') else '+'}{imt})"
    return str(c)


def _poly_text(p):
    if not p:
        return "0"
    key = _grlex_key(_pvars(p))
    out = []
    for mono in sorted(p, key=key):
        c = p[mono]
        mt = _mono_text(mono)
        if not mt:
            t = _coeff_text(c)
        elif c == 1:
            t = mt
        elif c == -1:
            t = "-" + mt
        else:
            t = f"{_coeff_text(c)}*{mt}"
        if out and not t.startswith("-"):
            out.append("+")
        out.append(t)
    return "".join(out)


def _coeff_json(c):
    if isinstance(c, Gauss):
        return [str(c.re), str(c.im)]
    return [str(c), "0"]


def _coeff_from_json(v):
    re, im = Fraction(v[0]), Fraction(v[1])
    return _c(Gauss(re, im)) if im else _c(re)


_ONE_POLY = {(): 1}
_Q_KEY = object()


class ScalarExpr:
    """Immutable element of Q(i)(s, params).

    Arithmetic operators accept ints and Fractions on either side.  Equality
    is decided by cross-multiplication, so two representations of the same
    rational function always compare equal even when not fully reduced.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None):
        num = {} if num is None else num
        den = _ONE_POLY if den is None else den
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num, den=_ONE_POLY):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # construction helpers
    @classmethod
    def const(cls, value):
        if isinstance(value, ScalarExpr):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point coefficients are not supported")
        if isinstance(value, float):
            raise TypeError("floating-point coefficients are not supported")
        v = _c(value if isinstance(value, Gauss) else Fraction(value))
        return cls._raw({(): v} if v != 0 else {})

    @classmethod
    def symbol(cls, name, power=1):
        if name == S:
            return cls._raw({((S, power),): 1} if power else _ONE_POLY)
        if power < 0:
            return cls._raw(_ONE_POLY, {((name, -power),): 1})
        return cls._raw({((name, power),): 1} if power else _ONE_POLY)

    # predicates / accessors
    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == _ONE_POLY

    def free_symbols(self):
        return set(_pvars(self.num, self.den))

    def is_number(self):
        return self.den == _ONE_POLY and all(not m for m in self.num)

    def number(self):
        """Return the value of a constant scalar as int/Fraction/Gauss."""
        if not self.is_number():
            raise ValueError(f"{self} is not a constant")
        return self.num.get((), 0)

    def as_term(self):
        """Return ``(coeff, monomial)`` if this is a single Laurent monomial."""
        if len(self.num) == 1 and len(self.den) == 1:
            (mn, cn), = self.num.items()
            (md, cd), = self.den.items()
            mono = _mmul(mn, _minv(md))
            return _cdiv(cn, cd), mono
        if not self.num:
            return 0, ()
        return None

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return ScalarExpr._raw(_padd(self.num, other.num))
            return ScalarExpr(_padd(self.num, other.num), self.den)
        return ScalarExpr(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr._raw({m: -c for m, c in self.num.items()}, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return ScalarExpr._raw(_pmul(self.num, other.num))
        return ScalarExpr(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        return ScalarExpr(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError(f"division of {self} by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        return not _padd(_pmul(self.num, other.den), _pmul(other.num, self.den), -1)

    __hash__ = None

    def conjugate(self):
        """Complex conjugation of coefficients (s and parameters are real)."""
        def conj(p):
            return {m: (c.conjugate() if isinstance(c, Gauss) else c) for m, c in p.items()}
        return ScalarExpr(conj(self.num), conj(self.den))

    def subs(self, values):
        """Exact substitution of rational values for symbols (``'s'`` included)."""
        def sub(p):
            out = {}
            for mono, c in p.items():
                keep = []
                for n, e in mono:
                    if n in values:
                        v = Fraction(values[n])
                        if v == 0 and e < 0:
                            raise ZeroDivisionError(f"{n} = 0 in a negative power")
                        c = c * v ** e
                    else:
                        keep.append((n, e))
                k = tuple(keep)
                out[k] = out.get(k, 0) + c
            return {m: _c(c) for m, c in out.items() if c != 0}
        den = sub(self.den)
        if not den:
            raise ZeroDivisionError("denominator vanishes under substitution")
        return ScalarExpr(sub(self.num), den)

    def classical(self):
        """The q -> 1 specialization (s = 1)."""
        return self.subs({S: 1})

    # rendering
    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"ScalarExpr({self.to_text()!r})"

    def to_text(self):
        num, den = self.num, self.den
        if den == _ONE_POLY and (len(num) <= 1 or _min_exp(num, S) >= 0):
            return _poly_text(num)
        shift = min(_min_exp(num, S), 0) if num else 0
        if shift:
            sh = ((S, -shift),)
            num = {_mmul(m, sh): c for m, c in num.items()}
            den = {_mmul(m, sh): c for m, c in den.items()}
        lcd = 1
        for c in list(num.values()) + list(den.values()):
            for part in Gauss._split(c):
                lcd = lcd * Fraction(part).denominator // math.gcd(lcd, Fraction(part).denominator)
        if lcd != 1:
            num = _pscale(num, lcd)
            den = _pscale(den, lcd)
        nt, dt = _poly_text(num), _poly_text(den)
        if len(num) > 1:
            nt = f"({nt})"
        if len(den) > 1 or "*" in dt or "/" in dt or dt.startswith("-"):
            dt = f"({dt})"
        return f"{nt}/{dt}"

    def to_json(self):
        names = _pvars(self.num, self.den)

        def enc(p):
            key = _grlex_key(names)
            rows = []
            for mono in sorted(p, key=key):
                d = dict(mono)
                rows.append([[d.get(n, 0) for n in names], _coeff_json(p[mono])])
            return rows
        return {"vars": names, "num": enc(self.num), "den": enc(self.den)}

    @classmethod
    def from_json(cls, data):
        names = data["vars"]

        def dec(rows):
            out = {}
            for exps, c in rows:
                mono = tuple((n, e) for n, e in zip(names, exps) if e)
                out[mono] = _coeff_from_json(c)
            return out
        return cls(dec(data["num"]), dec(data["den"]))


def _canonical(num, den):
    """Normalize a fraction: monomial content removed, monic denominator."""
    num = {m: c for m, c in num.items() if c != 0}
    if not num:
        return {}, _ONE_POLY
    if den == _ONE_POLY:
        return num, den
    # common parameter content; s is a unit so only the denominator fixes its shift
    names = _pvars(num, den)
    content = []
    for n in names:
        if n == S:
            e = _min_exp(den, S)
        else:
            e = min(_min_exp(num, n), _min_exp(den, n))
        if e:
            content.append((n, e))
    if content:
        inv = _minv(tuple(content))
        num = {_mmul(m, inv): c for m, c in num.items()}
        den = {_mmul(m, inv): c for m, c in den.items()}
    if len(den) == 1:
        (md, cd), = den.items()
        if cd != 1:
            num = {m: _cdiv(c, cd) for m, c in num.items()}
        return num, {md: 1}
    g = _s_gcd(num, den)
    if g is not None:
        gp = {(((S, e),) if e else ()): c for e, c in g.items()}
        num = _exact_div(num, gp)
        den = _exact_div(den, gp)
        if len(den) == 1:
            return _canonical(num, den)
    lc = den[_lead(den)]
    if lc != 1:
        num = {m: _cdiv(c, lc) for m, c in num.items()}
        den = {m: _cdiv(c, lc) for m, c in den.items()}
    q = _exact_div(num, den)
    if q is not None:
        return q, _ONE_POLY
    if len(num) < len(den):
        q = _exact_div(den, num)
        if q is not None:
            if len(q) == 1:
                (mq, cq), = q.items()
                return {(): _cdiv(1, cq)}, {mq: 1}
            lc = q[_lead(q)]
            return {(): _cdiv(1, lc)}, {m: _cdiv(c, lc) for m, c in q.items()}
    return num, den


def _coerce(v):
    if isinstance(v, ScalarExpr):
        return v
    if isinstance(v, (int, Rational, Gauss)) and not isinstance(v, bool):
        return ScalarExpr.const(v)
    return NotImplemented


ZERO = ScalarExpr._raw({})
ONE = ScalarExpr._raw(_ONE_POLY)
I = ScalarExpr._raw({(): Gauss(0, 1)})
s = ScalarExpr.symbol(S)
q = s * s


def const(value):
    return ScalarExpr.const(value)


def sym(name, power=1):
    """A commuting parameter (or ``'s'`` itself) raised to an integer power."""
    return ScalarExpr.symbol(name, power)


def qpow(e):
    """``q**e`` for integer or half-integer ``e``."""
    k = Fraction(e) * 2
    if k.denominator != 1:
        raise ValueError(f"q exponent {e} is not a multiple of 1/2")
    return ScalarExpr.symbol(S, int(k))


def arith(a, b, kind):
    """Field arithmetic with an explicit operation tag."""
    a, b = ScalarExpr.const(a), ScalarExpr.const(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def qint(n):
    """q-basic number [n]_q = 1 + q^2 + ... + q^(2(n-1))."""
    if n < 0:
        raise ValueError("qint requires n >= 0")
    return ScalarExpr._raw({(((S, 4 * k),) if k else ()): 1 for k in range(n)})


def qint1(n):
    """Step-q basic number 1 + q + ... + q^(n-1) of the one-dimensional calculus."""
    if n < 0:
        raise ValueError("qint1 requires n >= 0")
    return ScalarExpr._raw({(((S, 2 * k),) if k else ()): 1 for k in range(n)})


def eval_numeric(a, bindings=None, q_value=1.0):
    """Evaluate a scalar at ``q = q_value`` with numeric parameter bindings."""
    if q_value <= 0:
        raise ValueError("q_value must be positive")
    a = ScalarExpr.const(a)
    env = dict(bindings or {})
    env[S] = math.sqrt(q_value)
    env[_Q_KEY] = float(q_value)
    num = _peval(a.num, env)
    den = _peval(a.den, env)
    scale = sum(abs(_peval({m: c}, env)) for m, c in a.den.items())
    if den == 0 or abs(den) <= 1e-14 * scale:
        raise ZeroDivisionError(f"denominator of {a} vanishes at q={q_value}")
    return num / den


def eval_real(a, bindings=None, q_value=1.0):
    """Like :func:`eval_numeric` but insists on a real result."""
    z = eval_numeric(a, bindings, q_value)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
        raise ValueError(f"{a} is not real at the given point: {z}")
    return z.real


def is_finite(z):
    return cmath.isfinite(z)
