"""Schemas, facts, queries, and containment statements.

Variables and data elements share one symbol type, so a query body doubles
as a database instance (its canonical database) and an atom doubles as a
fact.  All values are immutable and hashable; they can be shared freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ArityMismatch, EmptyInstance, SchemeMismatch, UnknownRelation

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Namespace backing fresh_fact().  The parser rejects these in user input,
# which is what makes generated symbols fresh without global state.
RESERVED_RE = re.compile(r"_f\d+\Z")


@dataclass(frozen=True, order=True)
class Symbol:
    """An identifier that serves both as variable and as data element."""

    name: str

    def __post_init__(self):
        if not IDENT_RE.match(self.name):
            raise ValueError(f"invalid symbol name {self.name!r}")

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Atom:
    """relation(arg, ...) — a body atom or, read as data, a fact."""

    relation: str
    args: tuple[Symbol, ...] = ()

    def __post_init__(self):
        if not IDENT_RE.match(self.relation):
            raise ValueError(f"invalid relation name {self.relation!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def symbols(self) -> frozenset[Symbol]:
        return frozenset(self.args)

    def __str__(self) -> str:
        return f"{self.relation}({','.join(a.name for a in self.args)})"


def atom(relation: str, *args: str | Symbol) -> Atom:
    """Convenience constructor: ``atom("R", "x", "y")``."""
    return Atom(relation, tuple(a if isinstance(a, Symbol) else Symbol(a) for a in args))


@dataclass(frozen=True)
class FactSet:
    """An immutable set of atoms; used for instances and query bodies.

    Set semantics throughout: no duplicates, order-insensitive equality.
    Emptiness is legal here; external boundaries enforce the nonemptiness
    required of database instances via validate_instance().
    """

    facts: frozenset[Atom] = frozenset()

    def __post_init__(self):
        if not isinstance(self.facts, frozenset):
            object.__setattr__(self, "facts", frozenset(self.facts))

    def sorted(self) -> tuple[Atom, ...]:
        # memoized: fact sets are shared heavily across oracle sweeps
        got = self.__dict__.get("_sorted")
        if got is None:
            got = tuple(__import__("builtins").sorted(self.facts))
            object.__setattr__(self, "_sorted", got)
        return got

    def domain(self) -> frozenset[Symbol]:
        got = self.__dict__.get("_domain")
        if got is None:
            got = frozenset(s for f in self.facts for s in f.args)
            object.__setattr__(self, "_domain", got)
        return got

    def relations(self) -> frozenset[str]:
        return frozenset(f.relation for f in self.facts)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.facts)

    def __bool__(self) -> bool:
        return bool(self.facts)

    def __contains__(self, f: Atom) -> bool:
        return f in self.facts

    def __or__(self, other: FactSet) -> FactSet:
        return FactSet(self.facts | other.facts)

    def __sub__(self, other: Iterable[Atom]) -> FactSet:
        return FactSet(self.facts - frozenset(other))

    def issubset(self, other: FactSet) -> bool:
        return self.facts <= other.facts

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.sorted()) + "}"


@dataclass(frozen=True)
class Head:
    """Named-perspective head: a mapping attribute -> variable.

    Entries are kept sorted by attribute name; attribute order carries no
    meaning, so sorting makes equality and serialization canonical.  The
    empty head denotes the empty tuple ().
    """

    entries: tuple[tuple[str, Symbol], ...] = ()

    def __post_init__(self):
        entries = tuple(sorted(self.entries))
        attrs = [a for a, _ in entries]
        if len(set(attrs)) != len(attrs):
            raise ValueError("head attributes must be pairwise distinct")
        object.__setattr__(self, "entries", entries)

    @property
    def attributes(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.entries)

    @property
    def scheme(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.entries)

    def variables(self) -> frozenset[Symbol]:
        return frozenset(v for _, v in self.entries)

    def as_mapping(self) -> dict[str, Symbol]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{a}={v.name}" for a, v in self.entries) + ")"


@dataclass(frozen=True)
class ResultTuple:
    """One output tuple: a mapping attribute -> data element."""

    entries: tuple[tuple[str, Symbol], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @classmethod
    def from_mapping(cls, m: Mapping[str, Symbol]) -> ResultTuple:
        return cls(tuple(m.items()))

    def as_dict(self) -> dict[str, Symbol]:
        return dict(self.entries)

    def __getitem__(self, attr: str) -> Symbol:
        return dict(self.entries)[attr]

    def __str__(self) -> str:
        return "(" + ", ".join(f"{a}={v.name}" for a, v in self.entries) + ")"


@dataclass(frozen=True)
class Schema:
    """Relation names with fixed arities; the universe of the analysis."""

    relations: tuple[tuple[str, int], ...]

    def __init__(self, relations: Mapping[str, int] | Iterable[tuple[str, int]]):
        items = dict(relations)
        if not items:
            raise ValueError("schema must declare at least one relation")
        for name, arity in items.items():
            if not IDENT_RE.match(name):
                raise ValueError(f"invalid relation name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"invalid arity {arity!r} for {name!r}")
        object.__setattr__(self, "relations", tuple(sorted(items.items())))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def arity(self, name: str) -> int:
        for n, a in self.relations:
            if n == name:
                return a
        raise UnknownRelation(name)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self.relations)

    def __len__(self) -> int:
        return len(self.relations)


@dataclass(frozen=True)
class Query:
    """A conjunctive query: head tuple of variables, body set of atoms.

    Head variables need not occur in the body (unsafe queries are legal);
    such variables range over the active domain of the queried instance.
    """

    name: str
    head: Head = Head()
    body: FactSet = FactSet()

    @property
    def result_scheme(self) -> frozenset[str]:
        return self.head.scheme

    def head_variables(self) -> frozenset[Symbol]:
        return self.head.variables()

    def body_variables(self) -> frozenset[Symbol]:
        return active_domain(self.body)


@dataclass(frozen=True)
class ContainmentStatement:
    """An ordered pair of queries read as the boolean query lhs(I) ⊆ rhs(I)."""

    lhs: Query
    rhs: Query

    def __post_init__(self):
        if self.lhs.result_scheme != self.rhs.result_scheme:
            raise SchemeMismatch(
                "{" + ",".join(sorted(self.lhs.result_scheme)) + "}",
                "{" + ",".join(sorted(self.rhs.result_scheme)) + "}",
            )


def active_domain(fs: FactSet | Iterable[Atom]) -> frozenset[Symbol]:
    """All symbols occurring in any fact of fs."""
    if isinstance(fs, FactSet):
        return fs.domain()
    out: set[Symbol] = set()
    for f in fs:
        out.update(f.args)
    return frozenset(out)


def validate_facts(schema: Schema, fs: FactSet) -> None:
    """Check every fact against the schema (relation known, arity right)."""
    for f in fs.sorted():
        if f.relation not in schema:
            raise UnknownRelation(f.relation)
        expected = schema.arity(f.relation)
        if len(f.args) != expected:
            raise ArityMismatch(f.relation, expected, len(f.args))


def validate_instance(schema: Schema, fs: FactSet) -> None:
    """Boundary validation: instances must be nonempty and schema-conformant."""
    if not fs:
        raise EmptyInstance()
    validate_facts(schema, fs)


def build_z(schema: Schema, a: Symbol) -> FactSet:
    """The instance holding exactly one fact R(a, ..., a) per relation R."""
    return FactSet(Atom(name, (a,) * arity) for name, arity in schema.relations)


def fresh_fact(relation: str, arity: int, avoid: Iterable[Symbol] = ()) -> Atom:
    """A fact over pairwise-distinct symbols disjoint from `avoid`.

    Symbols are drawn deterministically from the reserved namespace
    _f0, _f1, ... which the parser refuses in user input.
    """
    avoid_set = frozenset(avoid)
    args: list[Symbol] = []
    i = 0
    while len(args) < arity:
        s = Symbol(f"_f{i}")
        i += 1
        if s not in avoid_set:
            args.append(s)
    return Atom(relation, tuple(args))
