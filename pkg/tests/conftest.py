"""Shared test helpers: independent brute-force oracles and tiny builders.

The brute-force functions below re-derive query semantics by exhaustive
assignment enumeration, with no code shared with the engine's backtracking
search; expected values in the tests are frozen from them.
"""

from __future__ import annotations

import itertools

import pytest

from cqkit import (
    Atom,
    FactSet,
    Query,
    ResultTuple,
    Symbol,
    active_domain,
    parse_document,
)


def brute_homomorphism_exists(body: FactSet, target: FactSet, pinned=None) -> bool:
    """Try every assignment of body symbols into the target's active domain."""
    pinned = dict(pinned or {})
    variables = sorted(active_domain(body) - set(pinned))
    domain = sorted(active_domain(target))
    for combo in itertools.product(domain, repeat=len(variables)):
        f = dict(zip(variables, combo))
        f.update(pinned)
        if all(
            Atom(a.relation, tuple(f[s] for s in a.args)) in target.facts
            for a in body.sorted()
        ):
            return True
    return False


def brute_evaluate(q: Query, i: FactSet, extra_domain=frozenset()) -> frozenset[ResultTuple]:
    """Reference semantics: all (head + body)-variable assignments into the
    active domain whose image of the body lies inside the instance."""
    variables = sorted(active_domain(q.body) | q.head.variables())
    domain = sorted(active_domain(i) | extra_domain)
    out = set()
    for combo in itertools.product(domain, repeat=len(variables)):
        f = dict(zip(variables, combo))
        if all(
            Atom(a.relation, tuple(f[s] for s in a.args)) in i.facts
            for a in q.body.sorted()
        ):
            out.add(ResultTuple(tuple((attr, f[v]) for attr, v in q.head.entries)))
    return frozenset(out)


def brute_statement_truth(st, i: FactSet) -> bool:
    return brute_evaluate(st.lhs, i) <= brute_evaluate(st.rhs, i)


def facts(*specs: str) -> FactSet:
    """facts("R(a,b)", "T(b)") without going through a schema."""
    out = []
    for s in specs:
        rel, rest = s.split("(", 1)
        args = rest.rstrip(")").replace(" ", "")
        out.append(
            Atom(rel.strip(), tuple(Symbol(a) for a in args.split(",")) if args else ())
        )
    return FactSet(out)


@pytest.fixture
def flights_doc():
    return parse_document(
        """
        schema Flights/2.
        query P(A=x, B=y) :- Flights(x,z), Flights(z,y).
        """
    )


FLIGHTS_INSTANCE = "Flights(Paris,Brussels)\nFlights(Brussels,Rome)\nFlights(Vienna,Paris)\n"
