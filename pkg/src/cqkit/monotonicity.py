"""Monotonicity of containment statements, with checkable certificates.

A containment statement lhs ⊆ rhs is monotone when growing the instance
can never turn it from true to false.  Two deciders are provided for
empty-head statements:

* decide_boolean_strict — a case analysis that always emits evidence:
  either a compiled fact set B such that the statement is equivalent to
  "() <- B is nonempty", or a concrete witness pair (I, J) with I ⊆ J on
  which the statement flips from true to false.

* decide_boolean_paper — the published five-step acceptance test,
  determinized by iterating candidate atoms.  It returns the bare bit.

The two modes disagree on a known zone: two-relation schemas where the
minimized left body is a single repetition-free atom but some connected
component of the right body maps into neither that atom nor a fresh fact
of the other relation.  There the strict decider emits a witness pair that
the brute-force oracle confirms, while the published test accepts.

Statements with nonempty heads are handled by analyze(): stripping the
heads preserves the statement whenever the original is monotone, so a
non-monotone stripped statement refutes the original, while a monotone
stripped statement only supports a bounded verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import HeadsNotEmpty, InternalCertificateInvalid, NotMonotoneInput
from .model import (
    ContainmentStatement,
    Schema,
    FactSet,
    Head,
    Query,
    active_domain,
    fresh_fact,
)
from .engine import body_maps_into, contains, minimize
from .oracle import Bounds, find_monotonicity_counterexample, statement_truth
from .structure import components


class VerdictKind(enum.Enum):
    MONOTONE = "monotone"
    NOT_MONOTONE = "not-monotone"
    REFUTED_VIA_HEAD_LEMMA = "refuted-via-head-lemma"
    BOUNDED_MONOTONE = "bounded-monotone"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a monotonicity analysis, carrying its evidence.

    MONOTONE: compiled_body holds B with the statement equivalent to
    "() <- B is nonempty"; B is empty or a union of connected components
    of the right-hand body.  (Paper-mode verdicts carry no certificate and
    leave compiled_body as None.)

    NOT_MONOTONE: witness = (I, J) with I ⊆ J, statement true on I and
    false on J.

    REFUTED_VIA_HEAD_LEMMA: witness refutes the head-stripped statement;
    the original cannot be monotone, but no direct pair was found in
    bounds.

    BOUNDED_MONOTONE: no counterexample exists within `bounds`; exactness
    is not claimed.
    """

    kind: VerdictKind
    compiled_body: FactSet | None = None
    witness: tuple[FactSet, FactSet] | None = None
    bounds: Bounds | None = None


@dataclass(frozen=True)
class CompilePartition:
    """Connected components of the right body, split by where they map:
    b_prime into the fresh other-relation fact, b_doubleprime into the
    minimized left body."""

    b_prime: tuple[FactSet, ...]
    b_doubleprime: tuple[FactSet, ...]


def strip_heads(st: ContainmentStatement) -> ContainmentStatement:
    """Replace both heads by the empty head, keeping bodies unchanged."""
    return ContainmentStatement(
        Query(st.lhs.name, Head(), st.lhs.body),
        Query(st.rhs.name, Head(), st.rhs.body),
    )


def _require_empty_heads(st: ContainmentStatement) -> None:
    if st.lhs.head.entries or st.rhs.head.entries:
        raise HeadsNotEmpty()


def _validated_witness(
    st: ContainmentStatement, small: FactSet, large: FactSet
) -> tuple[FactSet, FactSet]:
    # Every emitted pair is re-validated; a failure here is a bug, not an input error.
    if not small.issubset(large):
        raise InternalCertificateInvalid("witness pair is not nested")
    if not statement_truth(st, small):
        raise InternalCertificateInvalid("statement is false on the small witness instance")
    if statement_truth(st, large):
        raise InternalCertificateInvalid("statement is true on the large witness instance")
    return (small, large)


def partition_components(lhs_body: FactSet, fresh_instance: FactSet, rhs_body: FactSet):
    """Assign each component of rhs_body to B'' (maps into lhs_body) or B'
    (maps into fresh_instance); a component mapping into both goes to B'',
    keeping the compiled body minimal.  Returns (partition, failing) where
    failing is the first unassignable component, if any."""
    prime: list[FactSet] = []
    doubleprime: list[FactSet] = []
    for comp in components(rhs_body):
        if body_maps_into(comp, lhs_body):
            doubleprime.append(comp)
        elif body_maps_into(comp, fresh_instance):
            prime.append(comp)
        else:
            return CompilePartition(tuple(prime), tuple(doubleprime)), comp
    return CompilePartition(tuple(prime), tuple(doubleprime)), None


def decide_boolean_strict(st: ContainmentStatement, schema: Schema) -> Verdict:
    """Exact decision for empty-head statements, always with a certificate.

    Case analysis on the minimized left query Q1*:
      - empty body: the statement says "rhs body maps somewhere", compile B_Q2;
      - lhs contained in rhs: constant true, compile the empty body;
      - two or more atoms: dropping one atom of the minimal body yields a
        true-instance, the full body a false one — witness;
      - single atom with a repeated variable: a fresh repetition-free fact
        of the same relation is a true-instance, adding the body flips it;
      - single repetition-free atom: split on schema size.  One relation:
        the left query is constant true, compile B_Q2.  Two relations:
        partition the components of B_Q2 against the minimized body and a
        fresh fact of the other relation; full assignment compiles B',
        a leftover component yields a witness.  Three or more relations:
        a fresh fact of a relation foreign to both sides is a witness.
    """
    _require_empty_heads(st)
    q1 = minimize(st.lhs)
    q2 = st.rhs
    b1, b2 = q1.body, q2.body

    if not b1:
        return Verdict(VerdictKind.MONOTONE, compiled_body=b2)

    if contains(q1, q2):
        return Verdict(VerdictKind.MONOTONE, compiled_body=FactSet())

    avoid = active_domain(b1) | active_domain(b2)

    if len(b1) >= 2:
        # Minimality makes every proper subset a true-instance (Q1 cannot
        # map into it), while B_Q1* itself is a false one.
        drop = b1.sorted()[-1]
        return Verdict(
            VerdictKind.NOT_MONOTONE, witness=_validated_witness(st, b1 - {drop}, b1)
        )

    (single,) = b1.sorted()

    if len(set(single.args)) < len(single.args):  # repeated variable
        fresh = FactSet({fresh_fact(single.relation, len(single.args), avoid)})
        return Verdict(
            VerdictKind.NOT_MONOTONE, witness=_validated_witness(st, fresh, fresh | b1)
        )

    names = schema.names
    if len(names) == 1:
        # Any nonempty instance satisfies a single repetition-free atom.
        return Verdict(VerdictKind.MONOTONE, compiled_body=b2)

    if len(names) == 2:
        other = names[0] if names[1] == single.relation else names[1]
        i1 = FactSet({fresh_fact(other, schema.arity(other), avoid)})
        partition, failing = partition_components(b1, i1, b2)
        if failing is not None:
            return Verdict(
                VerdictKind.NOT_MONOTONE, witness=_validated_witness(st, i1, i1 | b1)
            )
        compiled = FactSet()
        for comp in partition.b_prime:
            compiled = compiled | comp
        return Verdict(VerdictKind.MONOTONE, compiled_body=compiled)

    # Three or more relation names: some component C of b2 misses b1
    # (containment already failed), and a relation S foreign to both C and
    # the left atom exists; a fresh S-fact is the true-instance.
    failing = next(c for c in components(b2) if not body_maps_into(c, b1))
    t_rel = failing.sorted()[0].relation
    s_rel = next(n for n in names if n not in (single.relation, t_rel))
    i2 = FactSet({fresh_fact(s_rel, schema.arity(s_rel), avoid)})
    return Verdict(VerdictKind.NOT_MONOTONE, witness=_validated_witness(st, i2, i2 | b1))


def decide_boolean_paper(st: ContainmentStatement, schema: Schema) -> bool:
    """The published five-step acceptance test, determinized; bit only.

    Accept if the left body is empty; else if lhs is contained in rhs;
    else iff the schema has at most two relation names and some atom of
    the left body is repetition-free and alone contains the left query.
    """
    _require_empty_heads(st)
    q1, q2 = st.lhs, st.rhs
    if not q1.body:
        return True
    if contains(q1, q2):
        return True
    if len(schema.names) > 2:
        return False
    for a in q1.body.sorted():
        if len(set(a.args)) == len(a.args):
            single = Query(q1.name, Head(), FactSet({a}))
            if contains(single, q1):
                return True
    return False


def compile_to_nonemptiness(st: ContainmentStatement, schema: Schema) -> Query:
    """The query () <- B whose nonemptiness is equivalent to the statement.

    Heads are stripped first if present; the strict decider must return
    MONOTONE, otherwise NotMonotoneInput is raised.
    """
    stripped = st if not (st.lhs.head.entries or st.rhs.head.entries) else strip_heads(st)
    verdict = decide_boolean_strict(stripped, schema)
    if verdict.kind is not VerdictKind.MONOTONE:
        raise NotMonotoneInput()
    assert verdict.compiled_body is not None
    return Query("compiled", Head(), verdict.compiled_body)


def analyze(
    st: ContainmentStatement,
    schema: Schema,
    bounds: Bounds = Bounds(),
    mode: str = "strict",
) -> Verdict:
    """Full analysis for arbitrary statements.

    Empty heads delegate to the chosen mode's decider.  Otherwise the heads
    are stripped: a non-monotone stripped statement refutes the original
    (REFUTED_VIA_HEAD_LEMMA, upgraded to NOT_MONOTONE when the oracle finds
    a direct pair within bounds); a monotone stripped statement yields
    BOUNDED_MONOTONE unless the oracle refutes the original directly.
    """
    if mode not in ("strict", "paper"):
        raise ValueError(f"unknown mode {mode!r}")

    if not st.lhs.head.entries and not st.rhs.head.entries:
        if mode == "paper":
            accepted = decide_boolean_paper(st, schema)
            return Verdict(VerdictKind.MONOTONE if accepted else VerdictKind.NOT_MONOTONE)
        return decide_boolean_strict(st, schema)

    stripped_verdict = decide_boolean_strict(strip_heads(st), schema)
    direct = find_monotonicity_counterexample(st, schema, bounds)
    if direct is not None:
        return Verdict(VerdictKind.NOT_MONOTONE, witness=direct)
    if stripped_verdict.kind is VerdictKind.NOT_MONOTONE:
        return Verdict(VerdictKind.REFUTED_VIA_HEAD_LEMMA, witness=stripped_verdict.witness)
    return Verdict(VerdictKind.BOUNDED_MONOTONE, bounds=bounds)
