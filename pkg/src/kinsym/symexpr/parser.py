"""Recursive-descent parser for the scalar expression language.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['-'] integer)?
    atom   := number | var | func '(' expr ')' | '(' expr ')'
    var    := 't' | 'x' | 'y' | 'z'
    func   := 'sin' | 'cos' | 'exp'

Unary minus sits above '^', so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError, UnknownIdentifierError
from .nodes import FUNCTIONS, VARIABLES, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Var

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)
_START = frozenset({"number", "variable", "function", "'('", "'-'"})


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = pos
            while stripped < n and text[stripped].isspace():
                stripped += 1
            if stripped == n:
                break
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped, _START)
        if m.group("num") is not None:
            toks.append(_Tok("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            toks.append(_Tok("name", m.group("name"), m.start("name")))
        else:
            toks.append(_Tok(m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text.rstrip()) if text.strip() else len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"unexpected {found}", t.pos, frozenset(expected))

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            raise self.fail({f"'{kind}'"})
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"})
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            t = self.term()
            terms.append(t if op == "+" else Neg(t))
        return terms[0] if len(terms) == 1 else Add(terms)

    def term(self) -> Expr:
        cur = self.factor()
        run: list[Expr] | None = None  # factors of a '*' chain built here
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            f = self.factor()
            if op == "*":
                if run is None:
                    run = [cur]
                run.append(f)
                cur = Mul(run)
            else:
                cur = Div(cur, f)
                run = None
        return cur

    def factor(self) -> Expr:
        if self.tok.kind == "-":
            self.advance()
            return Neg(self.factor())
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            sign = 1
            if self.tok.kind == "-":
                self.advance()
                sign = -1
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                raise self.fail({"integer"})
            self.advance()
            return Pow(base, sign * int(t.text))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(Fraction(t.text))
        if t.kind == "name":
            self.advance()
            if t.text in VARIABLES:
                return Var(t.text)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(t.text, arg)
            raise UnknownIdentifierError(t.text, t.pos)
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise self.fail(_START)


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree (no simplification)."""
    return _Parser(text).parse()
