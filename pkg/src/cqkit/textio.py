"""Text formats for schemas, queries, statements, and instances.

Document grammar (whitespace insignificant, ``#`` comments to end of line,
every declaration terminated by a period)::

    document  := schema decl*
    schema    := "schema" rel "/" nat ("," rel "/" nat)* "."
    decl      := query | assert
    query     := "query" name "(" headlist? ")" ":-" bodylist "."
    headlist  := headentry ("," headentry)*
    headentry := attr "=" var | var        # bare vars get attributes 1, 2, ...
    bodylist  := "true" | atom ("," atom)*
    atom      := rel "(" (var ("," var)*)? ")"
    assert    := "assert" name "<=" name "."

The empty body is spelled ``true`` and the empty head ``Q()``, so both stay
distinct from zero-arity atoms like ``R()``.  Instance files carry one
``rel(sym, ...)`` fact per nonblank line.

Identifiers matching ``_f<digits>`` are reserved for generated fresh
symbols and rejected in query text, which is what keeps generated
witnesses fresh with respect to every parsed query body.  Instance files
accept them, so emitted witness instances can be fed back in.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    DuplicateName,
    EmptyInstance,
    ParseError,
    SchemeMismatch,
    UnknownQuery,
    UnknownRelation,
)
from .model import (
    RESERVED_RE,
    Atom,
    FactSet,
    Head,
    Query,
    ResultTuple,
    Schema,
    Symbol,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<nat>\d+)
      | (?P<turnstile>:-)
      | (?P<le><=)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<comma>,)
      | (?P<dot>\.)
      | (?P<slash>/)
      | (?P<eq>=)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, first_line: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, pos = first_line, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line=line, col=col)
        kind = m.lastgroup or ""
        chunk = m.group(0)
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(what, tok)
        return self.advance()

    def fail(self, expected: str, tok: _Token | None = None) -> None:
        tok = tok or self.peek()
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise ParseError(f"expected {expected}, found {found}", line=tok.line, col=tok.col)

    def keyword(self, word: str) -> _Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text != word:
            self.fail(f"'{word}'", tok)
        return self.advance()

    def symbol(self, allow_reserved: bool = False) -> Symbol:
        tok = self.expect("ident", "a symbol")
        if not allow_reserved and RESERVED_RE.match(tok.text):
            raise ParseError(
                f"{tok.text!r} is reserved for generated symbols",
                line=tok.line,
                col=tok.col,
            )
        return Symbol(tok.text)


@dataclass(frozen=True)
class Document:
    """A schema together with named queries and containment assertions."""

    schema: Schema
    queries: tuple[Query, ...] = ()
    statements: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        names = [q.name for q in self.queries]
        if len(set(names)) != len(names):
            raise ValueError("duplicate query names")
        for lhs, rhs in self.statements:
            if self.query(lhs).result_scheme != self.query(rhs).result_scheme:
                raise ValueError(f"result schemes of {lhs} and {rhs} differ")

    def query(self, name: str) -> Query:
        for q in self.queries:
            if q.name == name:
                return q
        raise UnknownQuery(name)


def _parse_atom(p: _Parser, schema: Schema, allow_reserved: bool = False) -> Atom:
    rel_tok = p.expect("ident", "a relation name")
    if rel_tok.text not in schema:
        raise UnknownRelation(rel_tok.text, line=rel_tok.line, col=rel_tok.col)
    p.expect("lparen", "'('")
    args: list[Symbol] = []
    if p.peek().kind != "rparen":
        args.append(p.symbol(allow_reserved))
        while p.peek().kind == "comma":
            p.advance()
            args.append(p.symbol(allow_reserved))
    p.expect("rparen", "')'")
    expected = schema.arity(rel_tok.text)
    if len(args) != expected:
        raise ArityMismatch(
            rel_tok.text, expected, len(args), line=rel_tok.line, col=rel_tok.col
        )
    return Atom(rel_tok.text, tuple(args))


def _parse_head(p: _Parser) -> Head:
    entries: list[tuple[str, Symbol]] = []
    seen: set[str] = set()
    p.expect("lparen", "'('")
    position = 0
    while p.peek().kind != "rparen":
        position += 1
        tok = p.peek()
        if tok.kind == "nat" or (tok.kind == "ident" and p.peek(1).kind == "eq"):
            attr = p.advance().text
            p.expect("eq", "'='")
            var = p.symbol()
        elif tok.kind == "ident":
            attr = str(position)
            var = p.symbol()
        else:
            p.fail("a head entry", tok)
        if attr in seen:
            raise DuplicateName("attribute", attr, line=tok.line, col=tok.col)
        seen.add(attr)
        entries.append((attr, var))
        if p.peek().kind == "comma":
            p.advance()
            if p.peek().kind == "rparen":
                p.fail("a head entry")
        elif p.peek().kind != "rparen":
            p.fail("',' or ')'")
    p.advance()
    return Head(tuple(entries))


def _parse_body(p: _Parser, schema: Schema) -> FactSet:
    tok = p.peek()
    if tok.kind == "ident" and tok.text == "true" and p.peek(1).kind != "lparen":
        p.advance()
        return FactSet()
    atoms = [_parse_atom(p, schema)]
    while p.peek().kind == "comma":
        p.advance()
        atoms.append(_parse_atom(p, schema))
    return FactSet(atoms)


def parse_document(text: str) -> Document:
    """Parse and fully validate a document; every rejection carries a location."""
    p = _Parser(_tokenize(text))

    p.keyword("schema")
    relations: dict[str, int] = {}
    while True:
        rel_tok = p.expect("ident", "a relation name")
        if rel_tok.text in relations:
            raise DuplicateName("relation", rel_tok.text, line=rel_tok.line, col=rel_tok.col)
        p.expect("slash", "'/'")
        arity_tok = p.expect("nat", "an arity")
        relations[rel_tok.text] = int(arity_tok.text)
        if p.peek().kind == "comma":
            p.advance()
            continue
        break
    p.expect("dot", "'.'")
    schema = Schema(relations)

    queries: list[Query] = []
    statements: list[tuple[str, str]] = []
    by_name: dict[str, Query] = {}
    while p.peek().kind != "eof":
        tok = p.peek()
        if tok.kind != "ident" or tok.text not in ("query", "assert"):
            p.fail("'query' or 'assert'", tok)
        if tok.text == "query":
            p.advance()
            name_tok = p.expect("ident", "a query name")
            if name_tok.text in by_name:
                raise DuplicateName("query", name_tok.text, line=name_tok.line, col=name_tok.col)
            head = _parse_head(p)
            p.expect("turnstile", "':-'")
            body = _parse_body(p, schema)
            p.expect("dot", "'.'")
            q = Query(name_tok.text, head, body)
            queries.append(q)
            by_name[q.name] = q
        else:
            p.advance()
            lhs_tok = p.expect("ident", "a query name")
            p.expect("le", "'<='")
            rhs_tok = p.expect("ident", "a query name")
            p.expect("dot", "'.'")
            for t in (lhs_tok, rhs_tok):
                if t.text not in by_name:
                    raise UnknownQuery(t.text, line=t.line, col=t.col)
            lhs, rhs = by_name[lhs_tok.text], by_name[rhs_tok.text]
            if lhs.result_scheme != rhs.result_scheme:
                raise SchemeMismatch(
                    "{" + ",".join(sorted(lhs.result_scheme)) + "}",
                    "{" + ",".join(sorted(rhs.result_scheme)) + "}",
                    line=lhs_tok.line,
                    col=lhs_tok.col,
                )
            statements.append((lhs_tok.text, rhs_tok.text))
    return Document(schema, tuple(queries), tuple(statements))


def parse_instance(text: str, schema: Schema) -> FactSet:
    """One fact per nonblank line, validated against the schema."""
    facts: set[Atom] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        p = _Parser(_tokenize(raw.split("#", 1)[0], first_line=lineno))
        facts.add(_parse_atom(p, schema, allow_reserved=True))
        if p.peek().kind != "eof":
            p.fail("end of line")
    if not facts:
        raise EmptyInstance()
    return FactSet(facts)


def _serialize_query(q: Query) -> str:
    head = ", ".join(f"{a}={v.name}" for a, v in q.head.entries)
    body = ", ".join(str(f) for f in q.body.sorted()) if q.body else "true"
    return f"query {q.name}({head}) :- {body}."


def _serialize_document(d: Document) -> str:
    rels = ", ".join(f"{n}/{a}" for n, a in d.schema.relations)
    lines = [f"schema {rels}."]
    lines.extend(_serialize_query(q) for q in d.queries)
    lines.extend(f"assert {lhs} <= {rhs}." for lhs, rhs in d.statements)
    return "\n".join(lines) + "\n"


def serialize(x: Document | Query | FactSet | ResultTuple | frozenset | set) -> str:
    """Deterministic text for any value this package reads or reports.

    Facts are sorted by relation then arguments, attributes are already
    lexicographic, and result sets sort by their rendered form; documents
    and instances round-trip through the parsers unchanged.
    """
    if isinstance(x, Document):
        return _serialize_document(x)
    if isinstance(x, Query):
        return _serialize_query(x) + "\n"
    if isinstance(x, FactSet):
        return "".join(f"{f}\n" for f in x.sorted())
    if isinstance(x, ResultTuple):
        return f"{x}\n"
    if isinstance(x, (set, frozenset)):
        if not x:
            return "<empty>\n"
        return "".join(f"{t}\n" for t in sorted(str(t) for t in x))
    raise TypeError(f"cannot serialize {type(x).__name__}")
