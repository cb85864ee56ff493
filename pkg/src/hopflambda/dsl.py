"""Text format for maps R^4 -> R^2.

Two forms are accepted::

    f = x*u - y*v; g = x*v + y*u        # real pair in x, y, u, v
    F = z*conj(w)                       # complex shorthand, z = x+iy, w = u+iv

Operators by decreasing precedence: ``^`` (non-negative integer exponent),
unary ``-``/``+``, ``*``, binary ``+``/``-``; all binary operators associate to
the left.  ``conj`` applies only to ``z`` or ``w`` directly; ``i`` is the
imaginary unit in the complex form.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .errors import NonPolynomial, NonzeroConstantTerm, ParseError, UnknownIdentifier
from .mapcore import MapR4R2
from .poly import Poly4


MAX_EXPONENT = 64


class DecimalLiteralWarning(UserWarning):
    """A non-integer literal was used; identity checks assume near-exact coefficients."""


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, ID, OP, END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^/()=;])
""", re.VERBOSE)


def tokenize(src: str) -> list:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token({"num": "NUM", "id": "ID", "op": "OP"}[kind], m.group(), pos))
        pos = m.end()
    tokens.append(Token("END", "", len(src)))
    return tokens


# -- coefficient algebras ------------------------------------------------------

class _RealAlgebra:
    names = {"x", "y", "u", "v"}

    def __init__(self, src: str = ""):
        self.src = src

    def const(self, c):
        return Poly4.const(c)

    def ident(self, tok):
        if tok.text not in self.names:
            raise UnknownIdentifier(f"unknown identifier {tok.text!r} (expected x, y, u, v)",
                                    tok.pos, self.src)
        return Poly4.var(tok.text)

    def call(self, tok, arg_tok):
        raise UnknownIdentifier(f"unknown function {tok.text!r}", tok.pos, self.src)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def pow(self, a, n):
        return a ** n


class _ComplexAlgebra:
    """Values are pairs (re, im) of Poly4."""

    _z = (Poly4.var("x"), Poly4.var("y"))
    _w = (Poly4.var("u"), Poly4.var("v"))

    def __init__(self, src: str = ""):
        self.src = src

    def const(self, c):
        return (Poly4.const(c), Poly4.zero())

    def ident(self, tok):
        if tok.text == "z":
            return self._z
        if tok.text == "w":
            return self._w
        if tok.text == "i":
            return (Poly4.zero(), Poly4.const(1.0))
        raise UnknownIdentifier(f"unknown identifier {tok.text!r} (expected z, w, i, conj)",
                                tok.pos, self.src)

    def call(self, tok, arg_tok):
        if tok.text != "conj":
            raise UnknownIdentifier(f"unknown function {tok.text!r}", tok.pos, self.src)
        if arg_tok.kind != "ID" or arg_tok.text not in ("z", "w"):
            raise ParseError("conj applies only to z or w", arg_tok.pos, self.src)
        re_, im = self.ident(arg_tok)
        return (re_, -im)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def neg(self, a):
        return (-a[0], -a[1])

    def pow(self, a, n):
        out = self.const(1.0)
        for _ in range(n):
            out = self.mul(out, a)
        return out


class _Parser:
    def __init__(self, src: str, algebra):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.alg = algebra

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.pos, self.src)

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text) -> Token:
        if self.tok.text != text or self.tok.kind not in ("OP",):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    # expr := term (('+'|'-') term)*
    def expr(self):
        val = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            val = self.alg.add(val, rhs) if op == "+" else self.alg.sub(val, rhs)
        return val

    # term := unary ('*' unary)*
    def term(self):
        val = self.unary()
        while self.at_op("*", "/"):
            if self.tok.text == "/":
                raise self.error("division is not allowed in a polynomial", cls=NonPolynomial)
            self.advance()
            val = self.alg.mul(val, self.unary())
        return val

    # unary := ('-'|'+') unary | power
    def unary(self):
        if self.at_op("-"):
            self.advance()
            return self.alg.neg(self.unary())
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    # power := atom ('^' INT)?
    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            if self.at_op("-"):
                raise self.error("negative exponents are not polynomial", cls=NonPolynomial)
            t = self.tok
            if t.kind != "NUM" or not t.text.isdigit():
                raise self.error("exponent must be a non-negative integer literal")
            if int(t.text) > MAX_EXPONENT:
                raise self.error(f"exponent {t.text} exceeds the limit of {MAX_EXPONENT}")
            self.advance()
            if self.at_op("^"):
                raise self.error("chained '^' is ambiguous; use parentheses")
            return self.alg.pow(base, int(t.text))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "NUM":
            self.advance()
            if not t.text.isdigit():
                warnings.warn(f"decimal literal {t.text!r} at position {t.pos}",
                              DecimalLiteralWarning, stacklevel=4)
            return self.alg.const(float(t.text))
        if t.kind == "ID":
            self.advance()
            if self.at_op("("):
                self.advance()
                arg = self.tok
                val = self.alg.call(t, arg)
                self.advance()
                if not self.at_op(")"):
                    raise self.error(f"{t.text}() takes a single variable", arg)
                self.advance()
                return val
            return self.alg.ident(t)
        if self.at_op("("):
            self.advance()
            val = self.expr()
            self.expect(")")
            return val
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def statement(self):
        name = self.tok
        if name.kind != "ID":
            raise self.error("expected a definition such as 'f = ...'")
        self.advance()
        self.expect("=")
        return name, self.expr()

    def end_statement(self):
        if self.at_op(";"):
            self.advance()
        elif self.tok.kind != "END":
            raise self.error(f"expected ';' or end of input, found {self.tok.text!r}")


def _check_origin(f: Poly4, g: Poly4, src: str) -> MapR4R2:
    try:
        return MapR4R2(f, g, src)
    except NonzeroConstantTerm as exc:
        raise NonzeroConstantTerm(f"{exc}: the map must send 0 to 0") from None


def parse_real(src: str) -> MapR4R2:
    """Parse ``f = <poly>; g = <poly>``."""
    p = _Parser(src, _RealAlgebra(src))
    defs = {}
    while p.tok.kind != "END":
        name, val = p.statement()
        if name.text not in ("f", "g"):
            raise ParseError(f"expected 'f' or 'g', found {name.text!r}", name.pos, src)
        if name.text in defs:
            raise ParseError(f"{name.text!r} defined twice", name.pos, src)
        defs[name.text] = val
        p.end_statement()
    missing = [n for n in ("f", "g") if n not in defs]
    if missing:
        raise ParseError(f"missing definition of {' and '.join(missing)}", len(src), src)
    return _check_origin(defs["f"], defs["g"], src)


def parse_complex(src: str) -> MapR4R2:
    """Parse ``F = <expr>`` in z, w, conj(z), conj(w); returns (Re F, Im F)."""
    p = _Parser(src, _ComplexAlgebra(src))
    name, (re_, im) = p.statement()
    if name.text != "F":
        raise ParseError(f"expected 'F', found {name.text!r}", name.pos, src)
    p.end_statement()
    if p.tok.kind != "END":
        raise p.error("only one definition of F is allowed")
    return _check_origin(re_, im, src)


def source_kind(src: str) -> str:
    """'complex' when the first definition is of F, otherwise 'real'."""
    for tok in tokenize(src):
        return "complex" if tok.kind == "ID" and tok.text == "F" else "real"
    return "real"


def parse_map(src: str) -> MapR4R2:
    if source_kind(src) == "complex":
        return parse_complex(src)
    return parse_real(src)


def format_map(F: MapR4R2) -> str:
    """Real-form DSL text that parses back to the same pair of polynomials."""
    return str(F)


_BRIESKORN_RE = re.compile(r"^\s*F\s*=\s*z\s*\^\s*(\d+)\s*-\s*w\s*\^\s*(\d+)\s*;?\s*$")


def brieskorn_exponents(src: str):
    """(p, q) if ``src`` is literally ``F = z^p - w^q``, else None."""
    m = _BRIESKORN_RE.match(src)
    return (int(m.group(1)), int(m.group(2))) if m else None
