"""Tiny recursive-descent parser for rational-function expressions.

Grammar: + - * / ^ with integer exponents, parentheses, integer and p/q
literals, and a single variable (t for function-field inputs, z for loop
exponents).  "(t^2+1)/(t-3)" and "z^-1 + z^-2" are typical inputs.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .polynomials import RationalFunction
from .segal_wilson import LoopExponent

_TOKEN = re.compile(r"\s*(\d+|[a-zA-Z]+|\^|\+|-|\*|/|\(|\))")


class ParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, var: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("bad character at %r" % text[pos:])
            self.tokens.append(m.group(1))
            pos = m.end()
        self.pos = 0
        self.var = var

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise ParseError("expected %r, got %r" % (tok, got))

    def parse(self) -> RationalFunction:
        out = self.expr()
        if self.peek() is not None:
            raise ParseError("trailing input at %r" % self.peek())
        return out

    def expr(self) -> RationalFunction:
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RationalFunction:
        out = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "/":
                if rhs.is_zero():
                    raise ParseError("division by zero")
                out = out / rhs
            else:
                out = out * rhs
        return out

    def factor(self) -> RationalFunction:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ParseError("expected integer exponent, got %r" % tok)
            n = sign * int(tok)
            if n < 0 and base.is_zero():
                raise ParseError("zero to a negative power")
            base = base**n
        return base

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "(":
            out = self.expr()
            self.expect(")")
            return out
        if tok.isdigit():
            return RationalFunction.from_const(Fraction(int(tok)))
        if tok == self.var:
            return RationalFunction.variable()
        raise ParseError("unexpected token %r (variable is %r)" % (tok, self.var))


def parse_rational_function(text: str, var: str = "t") -> RationalFunction:
    return _Parser(text, var).parse()


def parse_place(text: str):
    from .places import Place

    text = text.strip()
    if text.lower() in ("inf", "oo", "infinity"):
        return Place.infinity()
    f = parse_rational_function(text, "t")
    if not f.is_polynomial():
        raise ParseError("a finite place is a polynomial, got %r" % text)
    return Place.finite(f.num.monic())


def parse_loop_exponent(text: str, side: str) -> LoopExponent:
    """Parse a finite Laurent polynomial in z into a loop exponent; the
    plus side must use positive degrees only, the minus side negative."""
    f = parse_rational_function(text, "z")
    den = f.den
    k = den.degree
    if any(c != 0 for c in den.coeffs[:-1]):
        raise ParseError("loop exponent must be a Laurent polynomial in z")
    coeffs = {i - k: c for i, c in enumerate(f.num.coeffs) if c != 0}
    if 0 in coeffs:
        raise ParseError("loop exponent cannot have a constant term")
    if side == "plus":
        if any(d < 0 for d in coeffs):
            raise ParseError("plus-side exponent needs positive degrees only")
        return LoopExponent("plus", coeffs)
    if any(d > 0 for d in coeffs):
        raise ParseError("minus-side exponent needs negative degrees only")
    return LoopExponent("minus", {-d: c for d, c in coeffs.items()})
