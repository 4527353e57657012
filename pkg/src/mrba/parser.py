"""Expression language: a recursive-descent parser plus a canonical renderer.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | dend
    dend   := tensor (('<:' | ':>') NAME tensor)*
    tensor := power ('⊗' '(' NAME ':' expr ')')*
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | IDENT | 'P' NAME? '(' expr ')'
            | BUILTIN '(' expr (',' expr)* ')' | '(' expr ')' | '{' expr '}'

``P1(y)`` applies the operator decorated ``1``; a bare ``P(y)`` is allowed
when there is exactly one decoration.  Braces mark an element of the base
algebra in relative mode.  ``render`` emits the minimal parenthesization,
and ``parse(render(e)) == e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .linear import fraction_text

BUILTINS = frozenset({"shuffle", "star", "lift", "picard"})
TENSOR = "⊗"


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# -- AST ---------------------------------------------------------------------

Pos = Tuple[int, int]
_pos = lambda: field(default=(1, 1), compare=False, repr=False)  # noqa: E731


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: Pos = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Add:
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Sub:
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Mul:
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Op:
    """Operator application; ``dec`` is None for the bare ``P(...)`` form."""

    dec: Optional[str]
    arg: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Dend:
    side: str  # "<:" or ":>"
    dec: str
    left: object
    right: object
    pos: Pos = _pos()


@dataclass(frozen=True)
class Tensor:
    head: object
    slots: tuple  # ((dec, expr), ...)
    pos: Pos = _pos()


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: Pos = _pos()


@dataclass(frozen=True)
class Base:
    arg: object
    pos: Pos = _pos()


# -- tokens ------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT IDENT NAME OP EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<dend><:|:>)|(?P<op>[-+*/^(),{}:⊗])"
)
_NAME = re.compile(r"[A-Za-z0-9]+")


def tokenize(text: str) -> list:
    out = []
    i, line, line_start = 0, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        col = i - line_start + 1
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = i + chunk.rindex("\n") + 1
            i = m.end()
            continue
        if kind == "dend":
            out.append(Token("OP", m.group(), line, col))
            i = m.end()
            # the decoration is the maximal alphanumeric run after optional spaces
            while i < len(text) and text[i] in " \t":
                i += 1
            n = _NAME.match(text, i)
            if not n:
                raise ParseError(f"expected a decoration name after {m.group()!r}", line, i - line_start + 1)
            out.append(Token("NAME", n.group(), line, i - line_start + 1))
            i = n.end()
            continue
        out.append(Token({"int": "INT", "ident": "IDENT", "op": "OP"}[kind], m.group(), line, col))
        i = m.end()
    out.append(Token("EOF", "", line, len(text) - line_start + 1))
    return out


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def at(self, text) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text) -> Token:
        if not self.at(text):
            found = "end of input" if self.tok.kind == "EOF" else repr(self.tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def parse(self):
        if self.tok.kind == "EOF":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        e = self.term()
        while self.at("+") or self.at("-"):
            t = self.take()
            rhs = self.term()
            e = (Add if t.text == "+" else Sub)(e, rhs, (t.line, t.col))
        return e

    def term(self):
        e = self.unary()
        while self.at("*"):
            t = self.take()
            e = Mul(e, self.unary(), (t.line, t.col))
        return e

    def unary(self):
        if self.at("-"):
            t = self.take()
            return Neg(self.unary(), (t.line, t.col))
        return self.dend()

    def dend(self):
        e = self.tensor()
        while self.at("<:") or self.at(":>"):
            t = self.take()
            name = self.take()
            e = Dend(t.text, name.text, e, self.tensor(), (name.line, name.col))
        return e

    def tensor(self):
        e = self.power()
        if not self.at(TENSOR):
            return e
        start = self.tok
        slots = []
        while self.at(TENSOR):
            self.take()
            self.expect("(")
            name = self.tok
            if name.kind not in ("IDENT", "INT") or not _NAME.fullmatch(name.text):
                raise self.error("expected a decoration name")
            self.take()
            self.expect(":")
            slots.append((name.text, self.expr()))
            self.expect(")")
        return Tensor(e, tuple(slots), (start.line, start.col))

    def power(self):
        e = self.atom()
        if self.at("^"):
            self.take()
            if self.tok.kind != "INT":
                raise self.error("expected an integer exponent")
            t = self.take()
            e = Pow(e, int(t.text), (t.line, t.col))
        return e

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "INT":
            self.take()
            value = Fraction(int(t.text))
            if self.at("/"):
                self.take()
                if self.tok.kind != "INT":
                    raise self.error("expected an integer denominator")
                d = int(self.take().text)
                if d == 0:
                    raise self.error("zero denominator", t)
                value = Fraction(int(t.text), d)
            return Num(value, pos)
        if t.kind == "IDENT":
            self.take()
            if self.at("("):
                if t.text in BUILTINS:
                    return self.call(t)
                if t.text[0] == "P" and _NAME.fullmatch(t.text[1:] or "x"):
                    self.take()
                    arg = self.expr()
                    self.expect(")")
                    return Op(t.text[1:] or None, arg, pos)
                raise self.error(f"{t.text!r} is not an operator or builtin", t)
            return Var(t.text, pos)
        if self.at("("):
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if self.at("{"):
            self.take()
            e = self.expr()
            self.expect("}")
            return Base(e, pos)
        if t.kind == "EOF":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")

    def call(self, name_tok):
        self.expect("(")
        args = [self.expr()]
        while self.at(","):
            self.take()
            args.append(self.expr())
        self.expect(")")
        return Call(name_tok.text, tuple(args), (name_tok.line, name_tok.col))


def walk(e) -> Iterable:
    yield e
    if isinstance(e, (Add, Sub, Mul, Dend)):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, (Neg, Op, Base)):
        yield from walk(e.arg)
    elif isinstance(e, Pow):
        yield from walk(e.base)
    elif isinstance(e, Tensor):
        yield from walk(e.head)
        for _, s in e.slots:
            yield from walk(s)
    elif isinstance(e, Call):
        for a in e.args:
            yield from walk(a)


def parse(text: str, decorations=None, variables=None):
    """Parse ``text``; optionally validate decoration and identifier names.

    ``variables`` lists allowed identifiers outside braces; names used as the
    first argument of ``lift`` are exempt.
    """
    e = _Parser(text).parse()
    if decorations is not None:
        check_decorations(e, decorations)
    if variables is not None:
        check_identifiers(e, variables)
    return e


def check_decorations(e, decorations) -> None:
    decs = set(decorations)
    for node in walk(e):
        if isinstance(node, (Op, Dend)):
            if isinstance(node, Op) and node.dec is None:
                if len(decs) != 1:
                    raise ParseError("bare P needs exactly one decoration", *node.pos)
            elif node.dec not in decs:
                raise ParseError(f"unknown decoration {node.dec!r}", *node.pos)
        elif isinstance(node, Tensor):
            for d, _ in node.slots:
                if d not in decs:
                    raise ParseError(f"unknown decoration {d!r}", *node.pos)


def check_identifiers(e, variables) -> None:
    allowed = set(variables)
    targets = {id(n.args[0]) for n in walk(e) if isinstance(n, Call) and n.name == "lift" and n.args}
    skip = {id(x) for n in walk(e) if isinstance(n, Base) for x in walk(n.arg)}
    for node in walk(e):
        if isinstance(node, Var) and node.name not in allowed and id(node) not in targets | skip:
            raise ParseError(f"unknown identifier {node.name!r}", *node.pos)


# -- renderer ----------------------------------------------------------------

_LEVEL = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Dend: 4, Tensor: 5, Pow: 6}
ATOM = 7


def _level(e) -> int:
    return _LEVEL.get(type(e), ATOM)


def render(e, need: int = 0) -> str:
    """Canonical text with the fewest parentheses that reparse to the same tree."""
    s = _render(e)
    return f"({s})" if _level(e) < need else s


def _render(e) -> str:
    if isinstance(e, Num):
        return fraction_text(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Add):
        return f"{render(e.left, 1)} + {render(e.right, 2)}"
    if isinstance(e, Sub):
        return f"{render(e.left, 1)} - {render(e.right, 2)}"
    if isinstance(e, Mul):
        return f"{render(e.left, 2)}*{render(e.right, 3)}"
    if isinstance(e, Neg):
        return f"-{render(e.arg, 3)}"
    if isinstance(e, Dend):
        return f"{render(e.left, 4)} {e.side}{e.dec} {render(e.right, 5)}"
    if isinstance(e, Tensor):
        return render(e.head, 6) + "".join(f" {TENSOR} ({d}:{render(s)})" for d, s in e.slots)
    if isinstance(e, Pow):
        return f"{render(e.base, ATOM)}^{e.exp}"
    if isinstance(e, Op):
        return f"P{e.dec or ''}({render(e.arg)})"
    if isinstance(e, Call):
        return f"{e.name}(" + ", ".join(render(a) for a in e.args) + ")"
    if isinstance(e, Base):
        return "{" + render(e.arg) + "}"
    raise TypeError(f"not an expression node: {e!r}")
