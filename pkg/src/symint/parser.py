"""Recursive-descent parser and minimal-parentheses printer for Expr trees.

Grammar (whitespace ignored)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | factor
    factor   := base ('^' exponent)?
    exponent := '-'? INT ('^' exponent)?
    base     := INT | IDENT | FUNC '(' expr ')' | '(' expr ')'

Exponents are integer literals; a tower like ``x^2^3`` folds to ``x^8``.
A prefix minus applies to a whole power, so ``-x^2`` is ``-(x^2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .expr import FUNCTIONS, Add, Div, Expr, Func, Mul, Neg, Num, Pi, Pow, Sub, Var


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError("bad span")


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, expected):
        self.span = span
        self.expected = tuple(expected)
        super().__init__(f"error at {span.start}..{span.end}: expected {', '.join(self.expected)}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")
_ALIASES = {"arctan": "atan"}


@dataclass
class _Tok:
    kind: str  # 'int' | 'ident' | 'op' | 'end'
    text: str
    start: int
    end: int


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(_byte_span(text, pos, pos + 1), ["number", "identifier", "operator"])
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind), m.end()))
        pos = m.end()
    toks.append(_Tok("end", "", n, n))
    return toks


def _byte_span(text: str, start: int, end: int) -> SourceSpan:
    # character offsets -> UTF-8 byte offsets
    b0 = len(text[:start].encode("utf-8"))
    b1 = b0 + len(text[start:end].encode("utf-8"))
    return SourceSpan(b0, b1)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        raise ParseError(_byte_span(self.text, t.start, t.end), expected)

    def take(self, text=None, kind=None):
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            return None
        self.i += 1
        return t

    def expect(self, text):
        if self.take(text) is None:
            self.fail([repr(text)])

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.take().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.take().text
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.take("-", "op"):
            return Neg(self.unary())
        return self.factor()

    def factor(self):
        base = self.base()
        if self.take("^", "op"):
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        sgn = -1 if self.take("-", "op") else 1
        t = self.take(kind="int")
        if t is None:
            self.fail(["integer exponent"])
        e = sgn * int(t.text)
        if self.take("^", "op"):
            e = e ** self.exponent()
        return e

    def base(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "ident":
            self.i += 1
            name = _ALIASES.get(t.text, t.text)
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(name, arg)
            if name == "pi":
                return Pi()
            return Var(name)
        if self.take("(", "op"):
            node = self.expr()
            self.expect(")")
            return node
        self.fail(["number", "identifier", "'('", "'-'"])


def parse(text: str) -> Expr:
    """Parse an infix expression string into an Expr tree."""
    p = _Parser(text)
    node = p.expr()
    if p.tok.kind != "end":
        p.fail(["operator", "end of input"])
    return node


# -- printer ------------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e: Expr, need: bool) -> str:
    s = print_expr(e)
    return f"({s})" if need else s


def print_expr(e: Expr) -> str:
    """Render e so that parse() rebuilds the same tree, with minimal parens."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Func):
        return f"{e.name}({print_expr(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _prec(e.arg) < 3)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _prec(e.base) < 5)}^{e.exp}"
    ops = {Add: "+", Sub: "-", Mul: "*", Div: "/"}
    for cls, sym in ops.items():
        if isinstance(e, cls):
            p = _prec(e)
            left = _wrap(e.left, _prec(e.left) < p)
            right = _wrap(e.right, _prec(e.right) <= p)
            return f"{left}{sym}{right}"
    raise TypeError(f"not an Expr: {e!r}")
