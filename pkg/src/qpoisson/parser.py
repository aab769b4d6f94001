"""Expression language: tokenizer, recursive-descent parser, printer, lowering.

Grammar (lowest to highest precedence)::

    expr     = term { ("+" | "-") term }
    term     = unary { ("*" | "/") unary }
    unary    = "-" unary | power
    power    = atom [ "^" exponent ]
    exponent = INT | "-" INT | "(" [ "-" ] INT [ "/" INT ] ")"
    atom     = NUMBER | IDENT | "(" expr ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import I, ONE, ScalarExpr, sym
from .errors import ParseError, UndeclaredIdentifierError
from .qalgebra import FreeWord, QPoly, normal_order

RESERVED = {"q", "s", "i"}
GENERATORS = {"x", "p"}

_NUMBER = re.compile(r"\d+(?:\.\d+)?|\.\d+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Num(Node):
    value: Fraction
    text: str
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sym(Node):
    name: str
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Gen(Node):
    name: str
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node
    span: tuple = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Fraction
    span: tuple = field(default=None, compare=False, repr=False)


# tokenizer ------------------------------------------------------------------

@dataclass
class Token:
    kind: str  # NUM, IDENT, OP, END
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            pos, line, col = pos + 1, line + 1, 1
            continue
        if ch.isspace():
            pos, col = pos + 1, col + 1
            continue
        m = _NUMBER.match(text, pos) or _IDENT.match(text, pos)
        if m:
            kind = "NUM" if m.re is _NUMBER else "IDENT"
            tokens.append(Token(kind, m.group(), line, col))
        elif ch in "+-*/^()":
            tokens.append(Token("OP", ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        step = len(m.group()) if m else 1
        pos, col = pos + step, col + step
    tokens.append(Token("END", "", line, col))
    return tokens


# parser ---------------------------------------------------------------------

class _Parser:
    def __init__(self, text, params):
        self.tokens = tokenize(text)
        self.k = 0
        self.params = set(params)

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, text):
        tok = self.take()
        if tok.text != text or tok.kind not in ("OP",):
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def at(self, *ops):
        t = self.peek()
        return t.kind == "OP" and t.text in ops

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
        return node

    def expr(self):
        node = self.term()
        while self.at("+", "-"):
            tok = self.take()
            node = BinOp(tok.text, node, self.term(), span=(tok.line, tok.col))
        return node

    def term(self):
        node = self.unary()
        while self.at("*", "/"):
            tok = self.take()
            node = BinOp(tok.text, node, self.unary(), span=(tok.line, tok.col))
        return node

    def unary(self):
        if self.at("-"):
            tok = self.take()
            return Neg(self.unary(), span=(tok.line, tok.col))
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            tok = self.take()
            return Pow(base, self.exponent(), span=(tok.line, tok.col))
        return base

    def _int(self):
        tok = self.take()
        if tok.kind != "NUM" or not tok.text.isdigit():
            raise ParseError("expected an integer exponent", tok.line, tok.col)
        return int(tok.text)

    def exponent(self):
        if self.at("-"):
            self.take()
            return Fraction(-self._int())
        if self.at("("):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            value = Fraction(self._int())
            if self.at("/"):
                self.take()
                den_tok = self.peek()
                den = self._int()
                if den == 0:
                    raise ParseError("zero denominator in exponent", den_tok.line, den_tok.col)
                value /= den
            self.expect(")")
            return sign * value
        return Fraction(self._int())

    def atom(self):
        tok = self.take()
        span = (tok.line, tok.col)
        if tok.kind == "NUM":
            return Num(Fraction(tok.text), tok.text, span=span)
        if tok.kind == "IDENT":
            if tok.text in GENERATORS:
                return Gen(tok.text, span=span)
            if tok.text in RESERVED or tok.text in self.params:
                return Sym(tok.text, span=span)
            raise UndeclaredIdentifierError(f"undeclared identifier {tok.text!r}", tok.line, tok.col)
        if tok.kind == "OP" and tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)


def parse(text, params=()):
    """Parse ``text``; identifiers other than q, s, i, x, p must be in ``params``."""
    return _Parser(text, params).parse()


# printer --------------------------------------------------------------------

def _prec(node):
    if isinstance(node, BinOp):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _wrap(node, minimum):
    text = to_source(node)
    return f"({text})" if _prec(node) < minimum else text


def _exp_text(e):
    if e.denominator == 1 and e >= 0:
        return str(e.numerator)
    return f"({e.numerator}/{e.denominator})" if e.denominator != 1 else f"({e.numerator})"


def to_source(node):
    """Print with the fewest parentheses that reparse to the same tree."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, (Sym, Gen)):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Pow):
        return _wrap(node.base, 5) + "^" + _exp_text(node.exponent)
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_wrap(node.left, 1)} {node.op} {_wrap(node.right, 2)}"
        return f"{_wrap(node.left, 2)}{node.op}{_wrap(node.right, 3)}"
    raise TypeError(f"not an AST node: {node!r}")


# lowering -------------------------------------------------------------------

def _err(node, message):
    line, col = node.span or (1, 1)
    return ParseError(message, line, col)


def _scalar_leaf(node):
    if isinstance(node, Num):
        return ScalarExpr.const(node.value)
    if node.name == "q":
        return sym("s", 2)
    if node.name == "s":
        return sym("s")
    if node.name == "i":
        return I
    return sym(node.name)


def _has_generator(node):
    if isinstance(node, Gen):
        return True
    if isinstance(node, (Neg, Pow)):
        return _has_generator(node.operand if isinstance(node, Neg) else node.base)
    if isinstance(node, BinOp):
        return _has_generator(node.left) or _has_generator(node.right)
    return False


def _scalar_pow(base, e, node):
    if e.denominator == 1:
        if base.is_zero() and e < 0:
            raise _err(node, "zero raised to a negative power")
        return base ** int(e)
    # fractional exponents only on pure powers of s (q^(1/2) and friends)
    term = base.as_term()
    if term is not None:
        c, mono = term
        if c == 1 and all(name == "s" for name, _ in mono):
            k = (mono[0][1] if mono else 0) * e
            if k.denominator == 1:
                return sym("s", int(k))
    raise _err(node, "fractional exponents are allowed on powers of q only")


def lower_scalar(node):
    """Evaluate a generator-free subtree to a :class:`ScalarExpr`."""
    if isinstance(node, (Num, Sym)):
        return _scalar_leaf(node)
    if isinstance(node, Gen):
        raise _err(node, f"generator {node.name!r} not allowed in a scalar")
    if isinstance(node, Neg):
        return -lower_scalar(node.operand)
    if isinstance(node, Pow):
        return _scalar_pow(lower_scalar(node.base), node.exponent, node)
    a, b = lower_scalar(node.left), lower_scalar(node.right)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b.is_zero():
        raise _err(node, "division by zero")
    return a / b


def _words_add(a, b, sign=1):
    out = dict(a)
    for w, c in b.items():
        v = out[w] + c * sign if w in out else c * sign
        if v.is_zero():
            out.pop(w, None)
        else:
            out[w] = v
    return out


def _words_mul(a, b):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            out = _words_add(out, {w1 + w2: c1 * c2})
    return out


def lower_words(node):
    """Lower to ``{letters: coeff}`` keeping the written order of generators."""
    if not _has_generator(node):
        c = lower_scalar(node)
        return {} if c.is_zero() else {(): c}
    if isinstance(node, Gen):
        return {(node.name,): ONE}
    if isinstance(node, Neg):
        return {w: -c for w, c in lower_words(node.operand).items()}
    if isinstance(node, Pow):
        e = node.exponent
        if e.denominator != 1 or e < 0:
            raise _err(node, "generators only take nonnegative integer powers")
        out, base = {(): ONE}, lower_words(node.base)
        for _ in range(int(e)):
            out = _words_mul(out, base)
        return out
    if node.op in "+-":
        return _words_add(lower_words(node.left), lower_words(node.right), 1 if node.op == "+" else -1)
    if node.op == "*":
        return _words_mul(lower_words(node.left), lower_words(node.right))
    if _has_generator(node.right):
        raise _err(node, "division by an expression containing generators")
    d = lower_scalar(node.right)
    if d.is_zero():
        raise _err(node, "division by zero")
    inv = ONE / d
    return {w: c * inv for w, c in lower_words(node.left).items()}


def lower(node):
    """Normal-ordered :class:`QPoly` of an AST."""
    out = QPoly.zero()
    for letters, c in lower_words(node).items():
        out = out + normal_order(FreeWord(letters, c))
    return out


def parse_qpoly(text, params=()):
    return lower(parse(text, params))


def parse_scalar(text, params=()):
    return lower_scalar(parse(text, params))
