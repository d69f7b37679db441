"""Recursive-descent parser for the formula concrete syntax.

Grammar (whitespace insignificant, ``#`` starts a line comment):

    formula  = conj
    conj     = unary { "&" unary }
    unary    = ("bplus"|"bminus"|"dplus"|"dminus") bound unary
             | "!" unary
             | atom
    atom     = "true" | IDENT | "(" binary ")" | "(" formula ")"
    binary   = formula ("S"|"U") bound formula
    bound    = "[" rational "," rational "]"
    rational = ["-"] INT ["/" INT]

Since/until are only legal inside parentheses, so no precedence between
"&" and the binary operators ever arises.  Conjunction associates to
the left.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import BmtlError, ParseError
from .syntax import (
    And,
    Bound,
    BoxMinus,
    BoxPlus,
    DiaMinus,
    DiaPlus,
    Formula,
    Not,
    Pred,
    Since,
    Top,
    Until,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<nl>\n)
      | (?P<comment>\#[^\n]*)
      | (?P<int>\d+)
      | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
      | (?P<punct>[\[\](),&!/-])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"bplus", "bminus", "dplus", "dminus", "true", "S", "U"}
_UNARY_OPS = {"bplus": BoxPlus, "bminus": BoxMinus, "dplus": DiaPlus, "dminus": DiaMinus}


class Token(NamedTuple):
    kind: str  # "int", "ident", "kw", or the punct character itself
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        col = pos - line_start + 1
        pos = m.end()
        if m.lastgroup == "nl":
            line += 1
            line_start = pos
        elif m.lastgroup in ("ws", "comment"):
            pass
        elif m.lastgroup == "int":
            tokens.append(Token("int", m.group(), line, col))
        elif m.lastgroup == "ident":
            kind = "kw" if m.group() in _KEYWORDS else "ident"
            tokens.append(Token(kind, m.group(), line, col))
        else:
            tokens.append(Token(m.group(), m.group(), line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.pos = 0
        # final position for end-of-input diagnostics
        nlines = text.count("\n") + 1
        last = text.rsplit("\n", 1)[-1]
        self.end = (nlines, len(last) + 1)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", *self.end)
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {what}, found end of input", *self.end)
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.line, tok.column)
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "&":
                self.next()
                node = And(node, self.unary())
            else:
                return node

    def unary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a formula, found end of input", *self.end)
        if tok.kind == "kw" and tok.text in _UNARY_OPS:
            self.next()
            bound = self.bound()
            return _UNARY_OPS[tok.text](bound, self.unary())
        if tok.kind == "!":
            self.next()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.next()
        if tok.kind == "kw" and tok.text == "true":
            return Top()
        if tok.kind == "ident":
            return Pred(tok.text)
        if tok.kind == "(":
            left = self.formula()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "kw" and nxt.text in ("S", "U"):
                self.next()
                bound = self.bound()
                right = self.formula()
                self.expect(")", "')'")
                cls = Since if nxt.text == "S" else Until
                return cls(left, bound, right)
            self.expect(")", "')'")
            return left
        raise ParseError(f"expected a formula, found {tok.text!r}", tok.line, tok.column)

    def bound(self) -> Bound:
        opening = self.expect("[", "'['")
        lo = self.rational()
        self.expect(",", "','")
        hi = self.rational()
        self.expect("]", "']'")
        try:
            return Bound(lo, hi)
        except BmtlError as e:
            raise type(e)(
                f"{e} (bound at line {opening.line}, column {opening.column})"
            ) from None

    def rational(self) -> Fraction:
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind == "-":
            self.next()
            sign = -1
        num = self.expect("int", "an integer")
        value = Fraction(int(num.text))
        tok = self.peek()
        if tok is not None and tok.kind == "/":
            self.next()
            den = self.expect("int", "a denominator")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.column)
            value = Fraction(int(num.text), int(den.text))
        return sign * value


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax into an AST; raises ParseError and friends."""
    parser = _Parser(_tokenize(text), text)
    node = parser.formula()
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError(
            f"trailing input {trailing.text!r}", trailing.line, trailing.column
        )
    return node
