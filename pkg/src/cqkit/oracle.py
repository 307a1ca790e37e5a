"""Brute-force ground truth at desk scale.

Everything here is exhaustive within explicit bounds: instance enumeration
over a finite fact universe, truth of containment statements per instance,
search for monotonicity counterexamples, and bounded equivalence checks
for compiled queries.  The enumeration order is fixed, so every result is
deterministic and reproducible.

A refutation found here is a proof; absence of one only covers the
searched bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import BoundsTooLarge, EmptyInstance
from .model import Atom, ContainmentStatement, FactSet, Query, Schema, Symbol
from .engine import body_maps_into, evaluate, result_tuple_in


@dataclass(frozen=True)
class Bounds:
    """Search bounds: at most domain_size symbols and max_facts facts.

    universe_cap refuses schemas whose full fact universe would make the
    subset enumeration explode; 24 possible facts means at most ~16M
    subsets before the max_facts filter.
    """

    domain_size: int = 3
    max_facts: int = 6
    universe_cap: int = 24

    def __post_init__(self):
        if self.domain_size < 1 or self.max_facts < 1:
            raise ValueError("bounds must be at least 1")


def universe_size(schema: Schema, bounds: Bounds) -> int:
    return sum(bounds.domain_size**arity for _, arity in schema.relations)


def fact_universe(schema: Schema, bounds: Bounds) -> tuple[Atom, ...]:
    """Every fact over symbols d1..dN, sorted; refuses oversized universes."""
    size = universe_size(schema, bounds)
    if size > bounds.universe_cap:
        raise BoundsTooLarge(size, bounds.universe_cap)
    symbols = [Symbol(f"d{i}") for i in range(1, bounds.domain_size + 1)]
    facts = [
        Atom(name, args)
        for name, arity in schema.relations
        for args in itertools.product(symbols, repeat=arity)
    ]
    return tuple(sorted(facts))


def enumerate_instances(schema: Schema, bounds: Bounds) -> Iterator[FactSet]:
    """All nonempty instances within bounds, exactly once each.

    Facts are ordered; subsets stream in ascending bitmask order with bit i
    selecting the i-th fact, filtered to at most max_facts facts.
    """
    facts = fact_universe(schema, bounds)
    n = len(facts)
    for mask in range(1, 1 << n):
        if mask.bit_count() > bounds.max_facts:
            continue
        yield FactSet(facts[i] for i in range(n) if mask >> i & 1)


def statement_truth(st: ContainmentStatement, i: FactSet) -> bool:
    """Is lhs(i) ⊆ rhs(i)?  Instances must be nonempty."""
    if not i:
        raise EmptyInstance()
    lhs, rhs = st.lhs, st.rhs
    if not lhs.head.entries and not rhs.head.entries:
        return body_maps_into(rhs.body, i) if body_maps_into(lhs.body, i) else True
    if lhs.body and not body_maps_into(lhs.body, i):
        return True  # lhs result is empty, nothing to contain
    return all(result_tuple_in(rhs, i, t) for t in evaluate(lhs, i))


@lru_cache(maxsize=1 << 15)
def _proper_subsets(fs: FactSet) -> tuple[FactSet, ...]:
    # Nonempty proper subsets in ascending bitmask order over sorted facts.
    facts = fs.sorted()
    n = len(facts)
    return tuple(
        FactSet(facts[i] for i in range(n) if mask >> i & 1)
        for mask in range(1, (1 << n) - 1)
    )


def find_monotonicity_counterexample(
    st: ContainmentStatement, schema: Schema, bounds: Bounds
) -> tuple[FactSet, FactSet] | None:
    """First pair I ⊂ J within bounds with the statement true on I, false on J.

    J runs over the instance enumeration and I over nonempty proper subsets
    of J, which covers every I ⊆ J pair within bounds.  None means no pair
    exists at these bounds; the statement may still fail on larger instances.
    """
    truth_memo: dict[FactSet, bool] = {}

    def truth(i: FactSet) -> bool:
        got = truth_memo.get(i)
        if got is None:
            got = truth_memo[i] = statement_truth(st, i)
        return got

    for j in enumerate_instances(schema, bounds):
        if truth(j):
            continue
        for i in _proper_subsets(j):
            if truth(i):
                return (i, j)
    return None


def check_compiled_equivalence(
    st: ContainmentStatement, compiled: Query, schema: Schema, bounds: Bounds
) -> FactSet | None:
    """First instance where the statement and the nonemptiness of `compiled`
    disagree, or None if they match everywhere within bounds."""
    if compiled.head.entries:
        raise ValueError("compiled query must have an empty head")
    for inst in enumerate_instances(schema, bounds):
        if statement_truth(st, inst) != body_maps_into(compiled.body, inst):
            return inst
    return None
