"""Word rewriting over a finite alphabet with scalar coefficients.

A noncommutative polynomial is a dict ``word -> ScalarExpr`` with words as
strings (the empty string is the unit).  Rules rewrite a word to a linear
combination of smaller words under a weighted length-lexicographic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .coeff import ONE, ScalarExpr
from .errors import ReductionLimitError

DEFAULT_STEP_LIMIT = 200_000


def _acc(out, w, c):
    v = out[w] + c if w in out else c
    if v.is_zero():
        out.pop(w, None)
    else:
        out[w] = v


def nc(*pairs):
    """Build a polynomial from ``(coeff, word)`` pairs."""
    out = {}
    for c, w in pairs:
        _acc(out, w, ScalarExpr.const(c))
    return out


def nc_add(*polys):
    out = {}
    for p in polys:
        for w, c in p.items():
            _acc(out, w, c)
    return out


def nc_scale(p, c):
    c = ScalarExpr.const(c)
    return {} if c.is_zero() else {w: v * c for w, v in p.items()}


def nc_mul(*polys):
    out = {"": ONE}
    for p in polys:
        nxt = {}
        for w1, c1 in out.items():
            for w2, c2 in p.items():
                _acc(nxt, w1 + w2, c1 * c2)
        out = nxt
    return out


def nc_equal(a, b):
    return all(a.get(w, ScalarExpr.const(0)) == b.get(w, ScalarExpr.const(0)) for w in set(a) | set(b))


def nc_text(p):
    if not p:
        return "0"
    parts = []
    for w in sorted(p, key=lambda w: (len(w), w)):
        letters = "*".join(w)
        ct = p[w].to_text()
        if not letters:
            parts.append(f"({ct})")
        elif ct == "1":
            parts.append(letters)
        else:
            parts.append(f"({ct})*{letters}")
    return " + ".join(parts)


@dataclass
class Rule:
    lhs: str
    rhs: dict


@dataclass
class RelationSet:
    """Rewrite rules ``lhs -> rhs`` plus the term order that orients them."""

    name: str
    rules: list
    alphabet: str = "abcd"
    weights: dict = field(default_factory=dict)
    description: str = ""

    def __post_init__(self):
        self.rules = [r if isinstance(r, Rule) else Rule(*r) for r in self.rules]
        self._by_lhs = {}
        for r in self.rules:
            if r.lhs in self._by_lhs:
                raise ValueError(f"duplicate rule for {r.lhs!r}")
            self._by_lhs[r.lhs] = r
        self._lengths = sorted({len(r.lhs) for r in self.rules})
        self._memo = {}

    def key(self, word):
        rank = {ch: k for k, ch in enumerate(self.alphabet)}
        return (sum(self.weights.get(ch, 0) for ch in word), len(word), tuple(rank[ch] for ch in word))

    def check_termination(self):
        """Every right-hand word must be smaller than its left-hand side."""
        bad = []
        for r in self.rules:
            for w in r.rhs:
                if not self.key(w) < self.key(r.lhs):
                    bad.append((r.lhs, w))
        return not bad, bad

    def _first_redex(self, word):
        for i in range(len(word)):
            for L in self._lengths:
                rule = self._by_lhs.get(word[i:i + L])
                if rule is not None:
                    return i, rule
        return None

    def one_step_reducts(self, word):
        out = []
        for i in range(len(word)):
            for L in self._lengths:
                rule = self._by_lhs.get(word[i:i + L])
                if rule is not None:
                    out.append(self._rewrite(word, i, rule))
        return out

    @staticmethod
    def _rewrite(word, i, rule):
        pre, post = word[:i], word[i + len(rule.lhs):]
        return {pre + w + post: c for w, c in rule.rhs.items()}

    def _nf_word(self, word, budget):
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        redex = self._first_redex(word)
        if redex is None:
            result = {word: ONE}
        else:
            budget[0] -= 1
            if budget[0] < 0:
                raise ReductionLimitError(f"step limit exceeded while reducing {word!r} under {self.name}")
            result = self._nf_poly(self._rewrite(word, *redex), budget)
        self._memo[word] = result
        return result

    def _nf_poly(self, poly, budget):
        out = {}
        for w, c in poly.items():
            for w2, c2 in self._nf_word(w, budget).items():
                _acc(out, w2, c * c2)
        return out

    def reduce(self, poly, step_limit=DEFAULT_STEP_LIMIT):
        """Normal form using leftmost-first rewriting with a step budget."""
        ok, bad = self.check_termination()
        if not ok:
            raise ReductionLimitError(f"rules of {self.name} are not oriented by the term order: {bad}")
        return self._nf_poly(poly, [step_limit])

    def check_confluence(self, max_length=6, step_limit=DEFAULT_STEP_LIMIT):
        """Every one-step reduct of every word up to ``max_length`` has the same normal form.

        Returns ``(ok, counterexample_word)``.
        """
        for n in range(max_length + 1):
            for letters in product(self.alphabet, repeat=n):
                word = "".join(letters)
                reducts = self.one_step_reducts(word)
                if len(reducts) < 2:
                    continue
                target = self.reduce({word: ONE}, step_limit)
                for r in reducts:
                    if not nc_equal(self.reduce(r, step_limit), target):
                        return False, word
        return True, None

    # serialization
    def to_json(self):
        return {
            "name": self.name,
            "alphabet": self.alphabet,
            "weights": dict(sorted(self.weights.items())),
            "description": self.description,
            "rules": [
                {"lhs": r.lhs, "rhs": [{"coeff": c.to_text(), "word": w} for w, c in sorted(r.rhs.items())]}
                for r in self.rules
            ],
        }

    @classmethod
    def from_json(cls, data, name="custom"):
        from .parser import parse_scalar

        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"rules": data}
        rules = []
        for row in data["rules"]:
            rhs = nc(*((parse_scalar(str(t["coeff"])), t.get("word", "")) for t in row["rhs"]))
            rules.append(Rule(row["lhs"], rhs))
        return cls(
            data.get("name", name),
            rules,
            data.get("alphabet", "abcd"),
            dict(data.get("weights", {})),
            data.get("description", ""),
        )

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))
