"""Text syntax for function terms.

Grammar (whitespace is ignored)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := atom ("^" INTEGER)?
    atom    := NUMBER ("/" NUMBER)?
             | "x"
             | NAME                          bound scalar, e.g. lambda
             | "twist" "(" expr ")"          expr must be constant
             | "chi" "(" KIND "," INTEGER ")"
             | "shift" "(" expr "," INTEGER ")"
             | "(" expr ")"

Constant subexpressions are folded to exact rationals, so ``twist(1+3)`` is
``twist(4)``.  Division only appears inside rational literals: ``x^2 / 2`` is
rejected, ``(1/2) * x^2`` is not.  See ``docs/dsl.md``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .characters import parse_character
from .errors import ParseError
from .padic import PadicNumber, make
from .ud import UDFunction, Char, Const, Twist, X, shift

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, p: int, prec: int, bindings: dict):
        self.toks = _tokenize(text)
        self.i = 0
        self.p = p
        self.prec = prec
        self.bindings = bindings

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message):
        raise ParseError(message, self.tok[2])

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.error(f"expected {value!r}")

    def integer(self):
        kind, value, _ = self.tok
        if kind != "int":
            self.error("expected an integer")
        self.i += 1
        return value

    # values are Fraction (constant) or UDFunction

    def expr(self):
        left = self.term()
        while True:
            if self.accept("+"):
                left = _add(left, self.term())
            elif self.accept("-"):
                left = _add(left, _mul(-1, self.term()))
            else:
                return left

    def term(self):
        left = self.unary()
        while self.accept("*"):
            left = _mul(left, self.unary())
        return left

    def unary(self):
        if self.accept("-"):
            return _mul(-1, self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            return base ** self.integer()
        return base

    def atom(self):
        kind, value, pos = self.tok
        if kind == "int":
            self.i += 1
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    raise ParseError("division by zero", pos)
                return Fraction(value, den)
            return Fraction(value)
        if kind == "name":
            self.i += 1
            if value == "x":
                return X
            if value == "twist":
                self.expect("(")
                arg_pos = self.tok[2]
                base = self.expr()
                self.expect(")")
                if isinstance(base, UDFunction):
                    raise ParseError("twist() needs a constant argument", arg_pos)
                return Twist(self.scalar(base))
            if value == "chi":
                self.expect("(")
                kname = self.tok
                if kname[0] != "name":
                    self.error("expected a character kind such as quad")
                self.i += 1
                self.expect(",")
                F = self.integer()
                self.expect(")")
                return Char(parse_character(f"{kname[1]}:{F}", self.p, self.prec))
            if value == "shift":
                self.expect("(")
                inner = self.expr()
                self.expect(",")
                n = self.integer()
                self.expect(")")
                if not isinstance(inner, UDFunction):
                    return inner
                return shift(inner, n)
            if value in self.bindings:
                bound = self.bindings[value]
                return bound if isinstance(bound, PadicNumber) else Fraction(bound)
            raise ParseError(f"unknown name {value!r}", pos)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("unexpected " + ("end of input" if kind == "end" else repr(value)))

    def scalar(self, value):
        return value if isinstance(value, PadicNumber) else make(self.p, self.prec, value)


def _add(a, b):
    if isinstance(a, UDFunction) or isinstance(b, UDFunction):
        return _as_fn(a) + _as_fn(b)
    return a + b


def _mul(a, b):
    if isinstance(a, UDFunction) or isinstance(b, UDFunction):
        if not isinstance(a, UDFunction):
            return b * a if a != 1 else b
        if not isinstance(b, UDFunction):
            return a * b if b != 1 else a
        return a * b
    return a * b


def _as_fn(v):
    return v if isinstance(v, UDFunction) else Const(v)


def parse_function(text: str, p: int, prec: int, bindings: dict | None = None) -> UDFunction:
    """Parse DSL text into a term; ``bindings`` supplies named scalars."""
    parser = _Parser(text, p, prec, bindings or {})
    value = parser.expr()
    if parser.tok[0] != "end":
        parser.error(f"unexpected {parser.tok[1]!r}")
    return _as_fn(value)
