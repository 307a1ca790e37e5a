"""Homomorphism search, CQ evaluation, containment, and minimization.

The search backtracks over body atoms, always expanding the atom with the
fewest matching target facts under the current partial assignment
(most-constrained-first with per-relation indexes); absence of a result is
therefore a proof of nonexistence, not a timeout.  Budgets, when supplied,
turn long searches into BudgetExceeded instead of silent truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import AtomNotInBody, BudgetExceeded, SchemeMismatch
from .model import (
    Atom,
    FactSet,
    Head,
    Query,
    ResultTuple,
    Symbol,
    active_domain,
)

Homomorphism = Mapping[Symbol, Symbol]


@dataclass(frozen=True)
class EvalBudget:
    """Caps on a single evaluation; None means unlimited.

    max_steps counts backtracking nodes; max_results caps the result set.
    Exceeding either raises BudgetExceeded so that a capped run can never
    be mistaken for a complete one.
    """

    max_results: int | None = None
    max_steps: int | None = None


class _Steps:
    __slots__ = ("left",)

    def __init__(self, limit: int | None):
        self.left = limit

    def tick(self) -> None:
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise BudgetExceeded("max_steps")


@lru_cache(maxsize=1 << 15)
def _index(target: FactSet) -> dict[str, list[Atom]]:
    # read-only after construction; cached because oracle sweeps reuse instances
    idx: dict[str, list[Atom]] = {}
    for f in target:
        idx.setdefault(f.relation, []).append(f)
    return idx


def _match(a: Atom, fact: Atom, assignment: dict[Symbol, Symbol]) -> dict[Symbol, Symbol] | None:
    """Bindings added by mapping atom a onto fact, or None if inconsistent."""
    new: dict[Symbol, Symbol] = {}
    for var, val in zip(a.args, fact.args):
        bound = assignment.get(var)
        if bound is None:
            bound = new.get(var)
        if bound is None:
            new[var] = val
        elif bound != val:
            return None
    return new


def _search(
    atoms: list[Atom],
    assignment: dict[Symbol, Symbol],
    idx: dict[str, list[Atom]],
    steps: _Steps,
) -> Iterator[dict[Symbol, Symbol]]:
    if not atoms:
        yield dict(assignment)
        return

    # Most-constrained-first: recount candidates under the current bindings.
    best_i = 0
    best: list[dict[Symbol, Symbol]] | None = None
    for i, a in enumerate(atoms):
        cands = []
        for fact in idx.get(a.relation, ()):
            b = _match(a, fact, assignment)
            if b is not None:
                cands.append(b)
        if best is None or len(cands) < len(best):
            best_i, best = i, cands
            if not cands:
                return
    assert best is not None

    rest = atoms[:best_i] + atoms[best_i + 1 :]
    for binding in best:
        steps.tick()
        assignment.update(binding)
        yield from _search(rest, assignment, idx, steps)
        for k in binding:
            del assignment[k]


def _homomorphisms(
    body: FactSet,
    target: FactSet,
    pinned: Homomorphism | None = None,
    budget: EvalBudget | None = None,
) -> Iterator[dict[Symbol, Symbol]]:
    steps = _Steps(budget.max_steps if budget else None)
    yield from _search(list(body.sorted()), dict(pinned or {}), _index(target), steps)


def find_homomorphism(
    body: FactSet,
    target: FactSet,
    pinned: Homomorphism | None = None,
    budget: EvalBudget | None = None,
) -> dict[Symbol, Symbol] | None:
    """A total extension f of pinned with f(body) ⊆ target, or None.

    The search is complete: None means no such homomorphism exists.
    """
    return next(_homomorphisms(body, target, pinned, budget), None)


@lru_cache(maxsize=1 << 18)
def body_maps_into(body: FactSet, target: FactSet) -> bool:
    """Cached satisfiability: does some homomorphism send body into target?

    An empty body maps vacuously.  Pure function of immutable values, so
    memoizing is safe; oracle sweeps hit the same (body, instance) pairs
    thousands of times.
    """
    return find_homomorphism(body, target) is not None


def evaluate(
    q: Query,
    i: FactSet,
    budget: EvalBudget | None = None,
    *,
    extra_domain: frozenset[Symbol] = frozenset(),
) -> frozenset[ResultTuple]:
    """All tuples f∘head over homomorphisms f from q into i.

    Head variables absent from the body range over the active domain.
    Over an empty fact set: nonempty bodies produce nothing; the empty
    body yields {()} for the empty head and nothing for an unsafe head.

    Body components share no variables, so evaluation factors through
    them: components without head variables contribute one satisfiability
    check, the others only their head projections.

    extra_domain widens the domain that unsafe variables range over; it is
    used for canonical-database checks, where the head variables of the
    reference query count as data elements even when no fact mentions them.
    """
    from .structure import components

    head = q.head
    head_vars = tuple(dict.fromkeys(v for _, v in head.entries))
    steps = _Steps(budget.max_steps if budget else None)
    max_results = budget.max_results if budget else None
    idx = _index(i)

    body_vars = active_domain(q.body)
    projections: list[tuple[tuple[Symbol, ...], list[tuple[Symbol, ...]]]] = []
    for comp in components(q.body):
        comp_vars = active_domain(comp)
        comp_head_vars = tuple(v for v in head_vars if v in comp_vars)
        gen = _search(list(comp.sorted()), {}, idx, steps)
        if not comp_head_vars:
            if next(gen, None) is None:
                return frozenset()
        else:
            seen = {tuple(f[v] for v in comp_head_vars) for f in gen}
            if not seen:
                return frozenset()
            projections.append((comp_head_vars, sorted(seen)))

    unsafe = tuple(v for v in head_vars if v not in body_vars)
    if unsafe:
        domain = sorted(active_domain(i) | extra_domain)
        if not domain:
            return frozenset()
        projections.append((unsafe, [c for c in itertools.product(domain, repeat=len(unsafe))]))

    if not projections:
        return frozenset({ResultTuple()})

    results: set[ResultTuple] = set()
    for combo in itertools.product(*(vals for _, vals in projections)):
        assignment: dict[Symbol, Symbol] = {}
        for (vars_, _), values in zip(projections, combo):
            assignment.update(zip(vars_, values))
        results.add(ResultTuple(tuple((a, assignment[v]) for a, v in head.entries)))
        if max_results is not None and len(results) > max_results:
            raise BudgetExceeded("max_results")
    return frozenset(results)


def result_tuple_in(
    q: Query,
    i: FactSet,
    t: ResultTuple,
    *,
    extra_domain: frozenset[Symbol] = frozenset(),
) -> bool:
    """Membership t ∈ q(i) decided by a pinned search, without enumerating q(i)."""
    pinned: dict[Symbol, Symbol] = {}
    values = t.as_dict()
    for attr, var in q.head.entries:
        val = values[attr]
        if pinned.setdefault(var, val) != val:
            return False

    body_vars = active_domain(q.body)
    allowed = active_domain(i) | extra_domain
    body_pinned = {}
    for var, val in pinned.items():
        if var in body_vars:
            body_pinned[var] = val
        elif val not in allowed:
            return False
    if not q.body:
        return True
    return find_homomorphism(q.body, i, body_pinned) is not None


def _check_schemes(q1: Query, q2: Query) -> None:
    if q1.result_scheme != q2.result_scheme:
        raise SchemeMismatch(
            "{" + ",".join(sorted(q1.result_scheme)) + "}",
            "{" + ",".join(sorted(q2.result_scheme)) + "}",
        )


def contains(q1: Query, q2: Query) -> bool:
    """Decide q1 ⊑ q2 by the canonical-database criterion.

    The body of q1 is read as an instance and the head of q1 as a tuple of
    data elements; q1 ⊑ q2 iff that tuple is an answer of q2 over that
    instance.  Head variables of q1 count as data elements of the
    canonical universe even when the body does not mention them, which is
    what makes the criterion self-witnessing: on a False answer, the
    canonical database separates the two queries.
    """
    _check_schemes(q1, q2)
    target_tuple = ResultTuple(q1.head.entries)
    return result_tuple_in(q2, q1.body, target_tuple, extra_domain=q1.head_variables())


def equivalent(q1: Query, q2: Query) -> bool:
    """Mutual containment."""
    return contains(q1, q2) and contains(q2, q1)


def is_redundant_atom(q: Query, a: Atom) -> bool:
    """True iff dropping a from the body leaves an equivalent query.

    Only (q minus a) ⊑ q needs checking; the other direction always holds.
    """
    if a not in q.body:
        raise AtomNotInBody(str(a))
    return contains(Query(q.name, q.head, q.body - {a}), q)


def minimize(q: Query) -> Query:
    """Remove redundant atoms until none is left.

    Removal candidates are tried in reverse serialized order after every
    removal, so serialized-earlier atoms are kept preferentially and the
    result is deterministic; all minimal forms are equivalent anyway.
    """
    body = q.body
    changed = True
    while changed:
        changed = False
        current = Query(q.name, q.head, body)
        for a in reversed(body.sorted()):
            if contains(Query(q.name, q.head, body - {a}), current):
                body = body - {a}
                changed = True
                break
    return Query(q.name, q.head, body)
