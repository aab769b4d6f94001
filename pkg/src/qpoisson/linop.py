"""Degree-truncated sparse linear operators on commutative monomial bases."""

from __future__ import annotations

from itertools import product

from .coeff import ONE, ZERO, ScalarExpr


def basis(nvars, N):
    """All exponent tuples with total degree <= N, ordered by degree then lexicographically."""
    out = [e for e in product(range(N + 1), repeat=nvars) if sum(e) <= N]
    return sorted(out, key=lambda e: (sum(e), e))


def _add_into(acc, k, c):
    v = acc[k] + c if k in acc else c
    if v.is_zero():
        acc.pop(k, None)
    else:
        acc[k] = v


class LinOperator:
    """Sparse matrix over monomials of degree <= N.

    ``shift`` is the net change of degree (a homogeneous grading).  ``reach``
    is the largest degree increase of any intermediate step, so the operator
    is known exactly on monomials of degree <= N - reach: its domain.
    """

    __slots__ = ("nvars", "N", "shift", "reach", "columns")

    def __init__(self, nvars, N, columns, shift=0, reach=None):
        self.nvars = nvars
        self.N = N
        self.shift = shift
        self.reach = max(shift, 0) if reach is None else reach
        self.columns = columns

    @classmethod
    def from_action(cls, nvars, N, action, shift=0, reach=None):
        """Build from ``action(mono) -> {mono: coeff}`` on the whole domain."""
        reach = max(shift, 0) if reach is None else reach
        cols = {}
        for mono in basis(nvars, N - reach):
            col = {}
            for k, c in action(mono).items():
                c = ScalarExpr.const(c)
                if not c.is_zero():
                    _add_into(col, k, c)
            cols[mono] = col
        return cls(nvars, N, cols, shift, reach)

    @classmethod
    def identity(cls, nvars, N):
        return cls.from_action(nvars, N, lambda e: {e: ONE})

    def domain(self):
        return basis(self.nvars, self.N - self.reach)

    def _check(self, other):
        if (self.nvars, self.N) != (other.nvars, other.N):
            raise ValueError("operators act on different truncated spaces")

    def _restrict(self, reach):
        keep = set(basis(self.nvars, self.N - reach))
        return {k: v for k, v in self.columns.items() if k in keep}

    def __matmul__(self, other):
        """Composition ``self o other`` (apply ``other`` first)."""
        self._check(other)
        reach = max(other.reach, other.shift + self.reach)
        cols = {}
        for mono, col in other._restrict(reach).items():
            acc = {}
            for k, c in col.items():
                for k2, c2 in self.columns[k].items():
                    _add_into(acc, k2, c * c2)
            cols[mono] = acc
        return LinOperator(self.nvars, self.N, cols, self.shift + other.shift, reach)

    def _combine(self, other, sign):
        self._check(other)
        if self.shift != other.shift and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add operators with different degree shifts")
        reach = max(self.reach, other.reach)
        cols = {}
        a, b = self._restrict(reach), other._restrict(reach)
        for mono in a:
            acc = dict(a[mono])
            for k, c in b[mono].items():
                _add_into(acc, k, c if sign > 0 else -c)
            cols[mono] = acc
        shift = self.shift if not self.is_zero() else other.shift
        return LinOperator(self.nvars, self.N, cols, shift, reach)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        c = ScalarExpr.const(c)
        cols = {m: ({k: v * c for k, v in col.items()} if not c.is_zero() else {}) for m, col in self.columns.items()}
        return LinOperator(self.nvars, self.N, cols, self.shift, self.reach)

    __rmul__ = scale

    def __mul__(self, c):
        if isinstance(c, LinOperator):
            return self @ c
        return self.scale(c)

    def __neg__(self):
        return self.scale(-1)

    def map_entries(self, fn):
        cols = {}
        for m, col in self.columns.items():
            acc = {}
            for k, v in col.items():
                v = fn(v)
                if not v.is_zero():
                    acc[k] = v
            cols[m] = acc
        return LinOperator(self.nvars, self.N, cols, self.shift, self.reach)

    def classical(self):
        return self.map_entries(lambda v: v.classical())

    def entry(self, row, col):
        return self.columns[col].get(row, ZERO)

    def apply(self, vec):
        """Apply to a sparse vector ``{mono: coeff}`` supported in the domain."""
        out = {}
        for mono, c in vec.items():
            if mono not in self.columns:
                raise ValueError(f"monomial {mono} lies outside the operator's domain")
            for k, v in self.columns[mono].items():
                _add_into(out, k, v * c)
        return out

    def is_zero(self):
        return all(not col for col in self.columns.values())

    def first_difference(self, other):
        """First basis monomial on which two operators differ, or None."""
        self._check(other)
        reach = max(self.reach, other.reach)
        a, b = self._restrict(reach), other._restrict(reach)
        for mono in basis(self.nvars, self.N - reach):
            ca, cb = a[mono], b[mono]
            for k in set(ca) | set(cb):
                if not (ca.get(k, ZERO) == cb.get(k, ZERO)):
                    return mono
        return None

    def __eq__(self, other):
        if not isinstance(other, LinOperator):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None

    def __repr__(self):
        return f"LinOperator(nvars={self.nvars}, N={self.N}, shift={self.shift}, reach={self.reach})"
