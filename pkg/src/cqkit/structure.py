"""Connectivity of fact sets and the syntactic additivity test.

Two facts are linked when they share a symbol; connected components are
the classes of the transitive closure of that relation.  Zero-arity facts
share no symbols with anything and form singleton components.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .model import Atom, FactSet, Query, Symbol


class _DisjointSet:
    def __init__(self):
        self.parent: dict[Symbol, Symbol] = {}

    def find(self, e: Symbol) -> Symbol:
        root = e
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[e] != root:  # path compression
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a: Symbol, b: Symbol) -> None:
        self.parent[self.find(a)] = self.find(b)


@dataclass(frozen=True)
class ComponentPartition:
    """Maximal connected pieces of a fact set, pairwise domain-disjoint."""

    components: tuple[FactSet, ...]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


@lru_cache(maxsize=1 << 15)
def components(fs: FactSet) -> ComponentPartition:
    """Partition fs into its connected components, deterministically ordered."""
    ds = _DisjointSet()
    for f in fs:
        args = f.args
        for other in args[1:]:
            ds.union(args[0], other)

    grouped: dict[Symbol, set[Atom]] = {}
    singletons: list[FactSet] = []
    for f in fs:
        if f.args:
            grouped.setdefault(ds.find(f.args[0]), set()).add(f)
        else:
            singletons.append(FactSet({f}))

    parts = [FactSet(g) for g in grouped.values()] + singletons
    parts.sort(key=lambda p: p.sorted())
    return ComponentPartition(tuple(parts))


def is_connected(fs: FactSet) -> bool:
    """True iff fs has exactly one component.  The empty set counts as not
    connected, keeping the syntactic additivity test conservative."""
    return len(components(fs)) == 1


def is_additive_syntactic(q: Query) -> bool:
    """Sufficient condition for additivity: the body is connected."""
    return is_connected(q.body)
