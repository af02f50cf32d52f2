"""Tiny expression grammar for points of Q(beta).

Accepts rationals, `b` for the base, + - * / ^ with integer exponents, and
parentheses, e.g. "1/(b^2-1)".  A string starting with '{' is instead parsed
as FieldElement JSON ({"coeffs": ["p/q", ...]}).
"""

from __future__ import annotations

import json
import re

from .field import FieldElement

_TOKEN = re.compile(r"\s*(\d+|b|[()+\-*/^])")


class ExprError(ValueError):
    """Malformed point expression."""


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ExprError(f"unexpected character at {text[pos:]!r}")
        out.append(match.group(1))
        pos = match.end()
    return out


class _Parser:
    def __init__(self, params, tokens: list[str]):
        self.params = params
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ExprError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> FieldElement:
        value = self.expr()
        if self.peek() is not None:
            raise ExprError(f"trailing input at {self.peek()!r}")
        return value

    def expr(self) -> FieldElement:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldElement:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> FieldElement:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ExprError("exponent must be an integer")
            exp = -int(tok) if neg else int(tok)
            return base ** exp
        return base

    def atom(self) -> FieldElement:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok == "b":
            return self.params.beta
        if tok is not None and tok.isdigit():
            return self.params.field.from_rational(int(tok))
        raise ExprError(f"unexpected token {tok!r}")


def parse_point(params, text: str) -> FieldElement:
    text = text.strip()
    if text.startswith("{"):
        return FieldElement.from_json(params.field, json.loads(text))
    return _Parser(params, _tokenize(text)).parse()
