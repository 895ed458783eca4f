"""Parser for join expressions such as ``S3 * T(1,2,3)``.

Grammar::

    expr  := term ( "*" term )*            left-associative
    term  := atom | "(" expr ")"
    atom  := "S" odd                       sphere of that dimension (S1 is the circle)
           | "Sk(" int ")"                 del Pezzo bundle
           | "F(" int "," int ")"          Fermat link F(d, n)
           | "T(" int "," int "," int ")"  3-Sasakian S(p1, p2, p3)
           | "Omega(" int [ "," "order=" int ] ")"
           | "@" name                      catalog entry

Positions in errors are 0-based character offsets.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping

from .catalog import build_family
from .errors import ParseError, SejoinError, UnknownAtom
from .join import Join, JoinExpr, Leaf
from .space import SeSpace

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ref>@[A-Za-z0-9_.+-]+(?:\([^()]*\))?)
  | (?P<word>[A-Za-z]+)
  | (?P<punct>[*(),=])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, catalog: Mapping[str, SeSpace] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.catalog = catalog or {}

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[1] else "end of input"
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> JoinExpr:
        node = self.term()
        while self.peek()[1] == "*":
            self.take("*")
            node = Join(node, self.term())
        return node

    def term(self) -> JoinExpr:
        if self.peek()[1] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        return Leaf(self.atom())

    def ints(self, count: int, optional_order: bool = False) -> tuple[tuple[int, ...], int | None]:
        self.take("(")
        values = [int(self.take(kind="num")[1])]
        for _ in range(count - 1):
            self.take(",")
            values.append(int(self.take(kind="num")[1]))
        order = None
        if optional_order and self.peek()[1] == ",":
            self.take(",")
            self.take("order")
            self.take("=")
            order = int(self.take(kind="num")[1])
        self.take(")")
        return tuple(values), order

    def atom(self) -> SeSpace:
        kind, value, pos = self.peek()
        if kind == "ref":
            self.i += 1
            name = value[1:]
            if name not in self.catalog:
                raise UnknownAtom(f"no catalog entry named {name!r}", pos)
            return self.catalog[name]
        if kind != "word":
            raise ParseError(f"expected an atom, found {value!r}" if value else "expected an atom", pos)
        self.i += 1
        builders: dict[str, Callable[[], tuple[str, tuple[int, ...], int | None]]] = {
            "Sk": lambda: ("del_pezzo", *self.ints(1)),
            "F": lambda: ("fermat", *self.ints(2)),
            "T": lambda: ("three_sasakian", *self.ints(3)),
            "Omega": lambda: ("toric_omega", *self.ints(1, optional_order=True)),
        }
        if value == "S" and self.peek()[0] == "num":
            dim = int(self.take(kind="num")[1])
            if dim % 2 == 0:
                raise ParseError(f"S{dim}: sphere dimension must be odd", pos)
            family, params, order = ("circle", (), None) if dim == 1 else ("sphere", ((dim - 1) // 2,), None)
        elif value in builders:
            family, params, order = builders[value]()
        else:
            raise UnknownAtom(f"unknown atom {value!r}", pos)
        try:
            return build_family(family, params, order)
        except SejoinError as exc:
            raise ParseError(f"{self.text[pos:self.tokens[self.i - 1][2] + 1]}: {exc}", pos) from exc


def parse_expr(text: str, catalog: Mapping[str, SeSpace] | None = None) -> JoinExpr:
    parser = _Parser(text, catalog)
    node = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", pos)
    return node


def parse_atom(text: str, catalog: Mapping[str, SeSpace] | None = None) -> SeSpace:
    """Parse a single atom, rejecting any join."""
    node = parse_expr(text, catalog)
    if not isinstance(node, Leaf):
        raise ParseError("expected a single space, not a join", 0)
    return node.space
