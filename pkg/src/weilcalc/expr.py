"""Parsing and canonical printing of polynomial expressions.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | INT '/' INT | VAR | '(' expr ')'

Variables are ``x1`` .. ``xn`` (the prefix is configurable).  Unary minus
binds looser than ``^``, so ``-x1^2`` is ``-(x1^2)``.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple

from .errors import WeilError
from .poly import Monomial, Poly, Scalar


class ExprSyntaxError(WeilError, ValueError):
    """Malformed expression; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class UnknownVariable(ExprSyntaxError):
    pass


class NegativeExponent(ExprSyntaxError):
    pass


class _Tok(NamedTuple):
    kind: str
    value: object
    pos: int


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])"
)


def _tokenize(s: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {s[pos]!r}", pos, s)
        kind = m.lastgroup
        text = m.group()
        if kind == "num":
            if "/" in text:
                p, q = text.split("/")
                if int(q) == 0:
                    raise ExprSyntaxError("zero denominator", pos, s)
                toks.append(_Tok("num", Scalar(int(p), int(q)), pos))
            else:
                toks.append(_Tok("int", int(text), pos))
        elif kind == "var":
            toks.append(_Tok("var", text, pos))
        elif kind == "op":
            toks.append(_Tok(text, text, pos))
        pos = m.end()
    toks.append(_Tok("end", None, len(s)))
    return toks


class _Parser:
    def __init__(self, text: str, dim: int, prefix: str):
        self.text = text
        self.dim = dim
        self.prefix = prefix
        self.toks = _tokenize(text)
        self.i = 0
        self._var_re = re.compile(re.escape(prefix) + r"([1-9]\d*)")

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None, cls=ExprSyntaxError):
        tok = tok or self.peek()
        return cls(message, tok.pos, self.text)

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self._describe(self.peek())}")
        return p

    @staticmethod
    def _describe(tok) -> str:
        if tok.kind == "end":
            return "end of input"
        return f"token {str(tok.value)!r}"

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        if self.peek().kind == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind == "-":
                raise self.error("negative exponent", tok, NegativeExponent)
            if tok.kind != "int":
                raise self.error(f"expected a non-negative integer exponent, got {self._describe(tok)}")
            self.take()
            base = base ** tok.value
            if self.peek().kind == "^":
                raise self.error("chained exponents are ambiguous; use parentheses")
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok.kind in ("int", "num"):
            return Poly.constant(self.dim, tok.value)
        if tok.kind == "var":
            m = self._var_re.fullmatch(tok.value)
            if m is None or int(m.group(1)) > self.dim:
                raise self.error(f"unknown variable {tok.value!r}", tok, UnknownVariable)
            return Poly.var(self.dim, int(m.group(1)) - 1)
        if tok.kind == "(":
            p = self.expr()
            close = self.peek()
            if close.kind != ")":
                raise self.error(f"expected ')', got {self._describe(close)}", close)
            self.take()
            return p
        raise self.error(f"unexpected {self._describe(tok)}", tok)


def parse_expr(s: str, dim: int, prefix: str = "x") -> Poly:
    """Parse ``s`` into a fully expanded polynomial in ``dim`` variables."""
    return _Parser(s, dim, prefix).parse()


def parse_components(s: str, dim: int, prefix: str = "x") -> List[Poly]:
    """Parse a comma-separated list of expressions."""
    parts = s.split(",")
    out = []
    offset = 0
    for part in parts:
        try:
            out.append(parse_expr(part, dim, prefix))
        except ExprSyntaxError as exc:
            raise type(exc)(exc.message, exc.position + offset, s) from None
        offset += len(part) + 1
    return out


def format_scalar(c: Scalar) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(mono: Monomial, prefix: str = "x") -> str:
    factors = []
    for i, e in enumerate(mono):
        if e == 1:
            factors.append(f"{prefix}{i + 1}")
        elif e > 1:
            factors.append(f"{prefix}{i + 1}^{e}")
    return "*".join(factors) if factors else "1"


def _print_key(mono: Monomial):
    return (-sum(mono), tuple(-e for e in mono))


def format_poly(p: Poly, prefix: str = "x") -> str:
    """Canonical text: descending graded-lex order, explicit ``p/q`` and ``*``."""
    if p.is_zero():
        return "0"
    out = []
    for mono in sorted(p.terms, key=_print_key):
        c = p.terms[mono]
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if sum(mono) == 0:
            body = format_scalar(mag)
        elif mag == 1:
            body = format_monomial(mono, prefix)
        else:
            body = f"{format_scalar(mag)}*{format_monomial(mono, prefix)}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
