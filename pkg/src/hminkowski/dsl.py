"""Text syntax for algebra elements.

Grammar (explicit ``*``, no juxtaposition)::

    relation := expr ['=' expr]
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | '+' unary | power
    power    := atom ['^' INT]
    atom     := NUMBER | IDENT | '(' expr ')' | '[' expr ',' expr ']'

``[x, y]`` is the commutator ``x*y - y*x``.  ``/`` only accepts scalar
divisors.  Identifiers are generator names plus the parameters ``h`` and ``r``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Tuple

from .ncalg import DISPLAY_RANK, GENERATORS, AlgElement, Word, commutator, sorted_terms
from .scalars import H, R, ParamScalar, format_scalar


class ParseError(ValueError):
    def __init__(self, message: str, src: str, pos: int):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line, self.column = line, col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],=]))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> List[_Tok]:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            rest = src[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {src[bad]!r}", src, bad)
        kind = m.lastgroup
        if kind is None:
            break
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Tok("eof", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, allowed: Optional[Iterable[str]]):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.allowed = set(allowed) if allowed is not None else None

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text: Optional[str] = None) -> _Tok:
        t = self.toks[self.i]
        if text is not None and t.text != text:
            found = t.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.src, t.pos)
        self.i += 1
        return t

    def expr(self) -> AlgElement:
        x = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> AlgElement:
        x = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            y = self.unary()
            if tok.text == "*":
                x = x * y
            else:
                if not y.is_scalar():
                    raise ParseError("division by a non-scalar element", self.src, tok.pos)
                s = y.scalar_value()
                if not s:
                    raise ParseError("division by zero", self.src, tok.pos)
                x = x.scale(s.inverse())
        return x

    def unary(self) -> AlgElement:
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> AlgElement:
        x = self.atom()
        if self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "num":
                raise ParseError("exponent must be a non-negative integer", self.src, t.pos)
            x = x ** int(t.text)
        return x

    def atom(self) -> AlgElement:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return AlgElement.const(int(t.text))
        if t.kind == "id":
            self.take()
            if t.text == "h":
                return AlgElement.const(H)
            if t.text == "r":
                return AlgElement.const(R)
            if t.text not in GENERATORS or (self.allowed is not None and t.text not in self.allowed):
                raise ParseError(f"unknown identifier {t.text!r}", self.src, t.pos)
            return AlgElement.gen(t.text)
        if t.text == "(":
            self.take()
            x = self.expr()
            self.take(")")
            return x
        if t.text == "[":
            self.take()
            x = self.expr()
            self.take(",")
            y = self.expr()
            self.take("]")
            return commutator(x, y)
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", self.src, t.pos)


def parse_expression(src: str, generators: Optional[Iterable[str]] = None) -> AlgElement:
    p = _Parser(src, generators)
    x = p.expr()
    if p.peek().kind != "eof":
        t = p.peek()
        raise ParseError(f"unexpected {t.text!r}", src, t.pos)
    return x


def parse_relation(src: str, generators: Optional[Iterable[str]] = None) -> Tuple[AlgElement, AlgElement]:
    """Parse ``lhs = rhs`` (or a bare expression, meaning ``expr = 0``)."""
    p = _Parser(src, generators)
    lhs = p.expr()
    rhs = AlgElement()
    if p.peek().text == "=":
        p.take()
        rhs = p.expr()
    if p.peek().kind != "eof":
        t = p.peek()
        raise ParseError(f"unexpected {t.text!r}", src, t.pos)
    return lhs, rhs


def format_word(w: Word) -> str:
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        parts.append(w[i] if j - i == 1 else f"{w[i]}^{j - i}")
        i = j
    return "*".join(parts)


def _is_negative(c: ParamScalar) -> bool:
    return c.num.leading()[1] < 0


def _format_magnitude(w: Word, c: ParamScalar, signed: bool) -> str:
    # a multi-term polynomial needs parentheses when a word or a sign is attached
    text = format_scalar(c)
    bare_sum = c.is_polynomial() and len(c.num.terms) > 1
    if not w:
        return f"({text})" if bare_sum and signed else text
    if c == 1:
        return format_word(w)
    return f"({text})*{format_word(w)}" if bare_sum else f"{text}*{format_word(w)}"


def format_element(x: AlgElement, rank: Mapping[str, int] = DISPLAY_RANK) -> str:
    """Render terms in ascending deglex word order; output re-parses to ``x``."""
    if not x:
        return "0"
    out = []
    for w, c in sorted_terms(x, rank):
        neg = _is_negative(c)
        body = _format_magnitude(w, -c if neg else c, neg or bool(out))
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_matrix(A) -> str:
    return "[" + ", ".join("[" + ", ".join(format_element(x) for x in row) + "]" for row in A.entries) + "]"
