"""Polynomials on the quantum plane ``p*x = q*x*p`` kept in x-before-p order."""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import ONE, ZERO, ScalarExpr, qpow

LETTERS = ("x", "p")


def _as_scalar(c):
    return c if isinstance(c, ScalarExpr) else ScalarExpr.const(c)


def _top_level_sum(text):
    """True if ``text`` has a + or - outside parentheses after its first char."""
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > 0:
            return True
    return False


class QPoly:
    """Normal-ordered polynomial ``sum c[n, m] * x^n p^m``.

    ``terms`` maps exponent pairs ``(n, m)`` to nonzero :class:`ScalarExpr`
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (n, m), c in (terms or {}).items():
            if n < 0 or m < 0:
                raise ValueError(f"negative generator power x^{n} p^{m}")
            c = _as_scalar(c)
            if not c.is_zero():
                clean[(n, m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def x(cls):
        return cls._raw({(1, 0): ONE})

    @classmethod
    def p(cls):
        return cls._raw({(0, 1): ONE})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, n, m, c=ONE):
        return cls({(n, m): c})

    @classmethod
    def zero(cls):
        return cls._raw({})

    # structure
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(k == (0, 0) for k in self.terms)

    def constant(self):
        return self.terms.get((0, 0), ZERO)

    def coefficient(self, n, m):
        return self.terms.get((n, m), ZERO)

    def degree(self):
        return max((n + m for n, m in self.terms), default=0)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return QPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw({k: -c for k, c in self.terms.items()})

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

    def scale(self, c):
        c = _as_scalar(c)
        if c.is_zero():
            return QPoly.zero()
        return QPoly._raw({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QPoly):
            return mul(self, other)
        if isinstance(other, (ScalarExpr, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (ScalarExpr, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, QPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant()
        return self.scale(ScalarExpr.const(1) / other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = QPoly.const(1), self
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
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(*k) == other.coefficient(*k) for k in keys)

    __hash__ = None

    def map_coeffs(self, fn):
        return QPoly({k: fn(c) for k, c in self.terms.items()})

    def classical(self):
        """Specialize every coefficient at q = 1."""
        return self.map_coeffs(lambda c: c.classical())

    # rendering
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def to_text(self):
        if not self.terms:
            return "0"
        pieces = []
        for (n, m), c in self.sorted_terms():
            mono = "*".join(f for f in (f"x^{n}" if n else "", f"p^{m}" if m else "") if f)
            ct = c.to_text()
            if not mono:
                term = f"({ct})" if pieces and _top_level_sum(ct) else ct
            elif ct == "1":
                term = mono
            elif ct == "-1":
                term = "-" + mono
            elif _top_level_sum(ct):
                term = f"({ct})*{mono}"
            else:
                term = f"{ct}*{mono}"
            if pieces:
                if term.startswith("-"):
                    pieces.append(" - " + term[1:])
                else:
                    pieces.append(" + " + term)
            else:
                pieces.append(term)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"QPoly({self.to_text()!r})"

    def to_json(self):
        return [
            {"n": n, "m": m, "coeff": c.to_json(), "text": c.to_text()}
            for (n, m), c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, rows):
        return cls({(r["n"], r["m"]): ScalarExpr.from_json(r["coeff"]) for r in rows})


def _coerce(v):
    if isinstance(v, QPoly):
        return v
    if isinstance(v, ScalarExpr) or isinstance(v, int) or hasattr(v, "denominator"):
        return QPoly.const(v)
    return NotImplemented


def mul(f, g):
    """Product of normal forms: (x^a p^b)(x^c p^d) = q^(b*c) x^(a+c) p^(b+d)."""
    out = {}
    for (a, b), cf in f.terms.items():
        for (c, d), cg in g.terms.items():
            coeff = cf * cg
            if b and c:
                coeff = coeff * qpow(b * c)
            key = (a + c, b + d)
            out[key] = out[key] + coeff if key in out else coeff
    return QPoly._raw({k: v for k, v in out.items() if not v.is_zero()})


@dataclass(frozen=True)
class FreeWord:
    """A scalar times a word in the letters ``x`` and ``p``, in written order."""

    letters: tuple = ()
    coeff: ScalarExpr = ONE

    def __post_init__(self):
        letters = tuple(self.letters)
        bad = [ch for ch in letters if ch not in LETTERS]
        if bad:
            raise ValueError(f"unknown letters {bad}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "coeff", _as_scalar(self.coeff))


def normal_order(word):
    """Reorder a free word to ``c * x^n p^m``.

    Each adjacent swap ``p x -> x p`` contributes a factor q, so the total
    factor is q raised to the number of (p before x) pairs.
    """
    n = m = inversions = 0
    for ch in word.letters:
        if ch == "x":
            n += 1
            inversions += m
        else:
            m += 1
    return QPoly({(n, m): word.coeff * qpow(inversions)})


def from_word(letters, coeff=ONE):
    return normal_order(FreeWord(tuple(letters), coeff))


class ShadowPoly:
    """Commutative polynomial in (x, p) over :class:`ScalarExpr`."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: _as_scalar(c) for k, c in (terms or {}).items() if not _as_scalar(c).is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ShadowPoly(out)

    def __sub__(self, other):
        return self + ShadowPoly({k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ShadowPoly):
            out = {}
            for (a, b), c1 in self.terms.items():
                for (c, d), c2 in other.terms.items():
                    k = (a + c, b + d)
                    out[k] = out[k] + c1 * c2 if k in out else c1 * c2
            return ShadowPoly(out)
        return ShadowPoly({k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ShadowPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, ZERO) == other.terms.get(k, ZERO) for k in keys)

    __hash__ = None

    def classical(self):
        return ShadowPoly({k: c.classical() for k, c in self.terms.items()})

    def to_text(self):
        return QPoly(self.terms).to_text()

    def __repr__(self):
        return f"ShadowPoly({self.to_text()!r})"


def shadow(f):
    """Forget noncommutativity: x^n p^m -> x^n p^m with the same coefficient."""
    return ShadowPoly(dict(f.terms))
