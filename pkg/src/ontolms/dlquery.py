"""Manchester-style class-expression queries.

A deliberately small subset: atomic class names, conjunction with ``and``,
existential restriction with ``some``, and individual-value restriction with
``value``. Parsing never touches the store; names are resolved when the
expression is evaluated, so a stored query may predate the vocabulary it
mentions.

Grammar (keywords are case-sensitive, tokens are whitespace-separated,
parentheses group)::

    expr := prim ('and' prim)*
    prim := IDENT | IDENT 'some' prim | IDENT 'value' IDENT | '(' expr ')'
"""

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError, UnknownName
from .ontology import Ontology

QueryExpr = Union["Atomic", "And", "Some", "Value"]

KEYWORDS = frozenset({"and", "some", "value"})
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Atomic:
    class_id: str


@dataclass(frozen=True)
class And:
    parts: tuple  # QueryExpr parts, length >= 2, never directly nested Ands


@dataclass(frozen=True)
class Some:
    prop: str
    filler: "QueryExpr"


@dataclass(frozen=True)
class Value:
    prop: str
    individual: str


@dataclass(frozen=True)
class _Token:
    text: str
    offset: int  # 1-based position of the first character


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(_Token(ch, i + 1))
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()":
                i += 1
            tokens.append(_Token(text[start:i], start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self._tokens = _tokenize(text)
        self._pos = 0
        self._end_offset = len(text) + 1

    def _peek(self) -> _Token | None:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _advance(self) -> _Token:
        tok = self._tokens[self._pos]
        self._pos += 1
        return tok

    def _fail(self, expected: str):
        tok = self._peek()
        offset = tok.offset if tok is not None else self._end_offset
        raise ParseError(offset, expected)

    def parse(self) -> QueryExpr:
        expr = self._expr()
        if self._peek() is not None:
            self._fail("expected end of input")
        return expr

    def _expr(self) -> QueryExpr:
        parts = [self._prim()]
        while True:
            tok = self._peek()
            if tok is None or tok.text != "and":
                break
            self._advance()
            parts.append(self._prim())
        if len(parts) == 1:
            return parts[0]
        flat = []
        for part in parts:
            if isinstance(part, And):
                flat.extend(part.parts)
            else:
                flat.append(part)
        return And(tuple(flat))

    def _prim(self) -> QueryExpr:
        tok = self._peek()
        if tok is None:
            self._fail("expected class expression")
        if tok.text == "(":
            self._advance()
            inner = self._expr()
            closer = self._peek()
            if closer is None or closer.text != ")":
                self._fail("expected ')'")
            self._advance()
            return inner
        if tok.text in KEYWORDS or not _IDENT_RE.match(tok.text):
            self._fail("expected class expression")
        name = self._advance().text
        nxt = self._peek()
        if nxt is not None and nxt.text == "some":
            self._advance()
            return Some(name, self._prim())
        if nxt is not None and nxt.text == "value":
            self._advance()
            target = self._peek()
            if target is None or target.text in KEYWORDS or not _IDENT_RE.match(target.text):
                self._fail("expected individual name")
            return Value(name, self._advance().text)
        return Atomic(name)


def parse_query(text: str) -> QueryExpr:
    return _Parser(text).parse()


def format_query(expr: QueryExpr) -> str:
    """Canonical text form; re-parsing yields a structurally equal expression."""
    if isinstance(expr, Atomic):
        return expr.class_id
    if isinstance(expr, Value):
        return f"{expr.prop} value {expr.individual}"
    if isinstance(expr, Some):
        return f"{expr.prop} some ({format_query(expr.filler)})"
    if isinstance(expr, And):
        return " and ".join(format_query(p) for p in expr.parts)
    raise TypeError(f"not a query expression: {expr!r}")


def evaluate(expr: QueryExpr, store: Ontology) -> list[str]:
    """Individuals satisfying the expression, sorted lexicographically."""
    with store.read_lock():
        return sorted(_extension(expr, store))


def class_extension(class_id: str, store: Ontology) -> list[str]:
    return evaluate(Atomic(class_id), store)


def _extension(expr: QueryExpr, store: Ontology) -> set[str]:
    if isinstance(expr, Atomic):
        if not store.has_class(expr.class_id):
            raise UnknownName(expr.class_id, "class")
        return store.instances_of(expr.class_id, transitive=True)
    if isinstance(expr, And):
        result: set[str] | None = None
        for part in expr.parts:
            ext = _extension(part, store)
            result = ext if result is None else result & ext
        return result if result is not None else set()
    if isinstance(expr, Some):
        if store.object_property(expr.prop) is None:
            raise UnknownName(expr.prop, "object property")
        filler = _extension(expr.filler, store)
        return {s for s, o in store.assertions_with(expr.prop) if o in filler}
    if isinstance(expr, Value):
        if store.object_property(expr.prop) is None:
            raise UnknownName(expr.prop, "object property")
        if not store.has_individual(expr.individual):
            raise UnknownName(expr.individual, "individual")
        return {s for s, o in store.assertions_with(expr.prop)
                if o == expr.individual}
    raise TypeError(f"not a query expression: {expr!r}")
