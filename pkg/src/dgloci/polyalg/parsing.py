"""Recursive-descent parser for the polynomial text syntax.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom (('^'|'**') INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re

from ..errors import InputError
from .ring import PolyRing, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise InputError(f"unexpected character {text[col]!r} in polynomial {text!r}", column=col + 1)
        kind = "int" if m.group(1) else "name" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok):
        raise InputError(f"{msg} in polynomial {self.text!r}", column=tok[2] + 1)

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division only by nonzero constants", op)
                acc = acc.scale(self.ring.field.inv(rhs.lead_coeff))
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("expected a nonnegative integer exponent", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring.variables:
                raise InputError(f"unknown variable {val!r} in polynomial {self.text!r}", column=pos + 1)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        self.fail("unexpected token " + (repr(val) if val else "end of input"), tok)


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    p = _Parser(ring, text)
    if p.peek()[0] == "end":
        raise InputError("empty polynomial", column=1)
    result = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        p.fail(f"unexpected token {tok[1]!r}", tok)
    return result
