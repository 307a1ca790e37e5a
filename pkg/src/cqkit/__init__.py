"""Conjunctive-query analysis: evaluation, containment, monotonicity.

The package evaluates conjunctive queries, decides containment through the
canonical-database criterion, tests and certifies monotonicity of
containment statements, compiles monotone statements into equivalent
nonemptiness queries, and cross-checks every verdict against a brute-force
small-instance oracle.
"""

from .errors import (
    ArityMismatch,
    AtomNotInBody,
    BoundsTooLarge,
    BudgetExceeded,
    CQError,
    DuplicateName,
    EmptyInstance,
    HeadsNotEmpty,
    InternalCertificateInvalid,
    NotMonotoneInput,
    ParseError,
    SchemeMismatch,
    UnknownQuery,
    UnknownRelation,
)
from .model import (
    Atom,
    ContainmentStatement,
    FactSet,
    Head,
    Query,
    ResultTuple,
    Schema,
    Symbol,
    active_domain,
    atom,
    build_z,
    fresh_fact,
    validate_facts,
    validate_instance,
)
from .engine import (
    EvalBudget,
    Homomorphism,
    body_maps_into,
    contains,
    equivalent,
    evaluate,
    find_homomorphism,
    is_redundant_atom,
    minimize,
    result_tuple_in,
)
from .structure import (
    ComponentPartition,
    components,
    is_additive_syntactic,
    is_connected,
)
from .oracle import (
    Bounds,
    check_compiled_equivalence,
    enumerate_instances,
    fact_universe,
    find_monotonicity_counterexample,
    statement_truth,
)
from .monotonicity import (
    CompilePartition,
    Verdict,
    VerdictKind,
    analyze,
    compile_to_nonemptiness,
    decide_boolean_paper,
    decide_boolean_strict,
    partition_components,
    strip_heads,
)
from .textio import Document, parse_document, parse_instance, serialize

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "Atom",
    "AtomNotInBody",
    "Bounds",
    "BoundsTooLarge",
    "BudgetExceeded",
    "CQError",
    "CompilePartition",
    "ComponentPartition",
    "ContainmentStatement",
    "Document",
    "DuplicateName",
    "EmptyInstance",
    "EvalBudget",
    "FactSet",
    "Head",
    "HeadsNotEmpty",
    "Homomorphism",
    "InternalCertificateInvalid",
    "NotMonotoneInput",
    "ParseError",
    "Query",
    "ResultTuple",
    "Schema",
    "SchemeMismatch",
    "Symbol",
    "UnknownQuery",
    "UnknownRelation",
    "Verdict",
    "VerdictKind",
    "active_domain",
    "analyze",
    "atom",
    "body_maps_into",
    "build_z",
    "check_compiled_equivalence",
    "compile_to_nonemptiness",
    "components",
    "contains",
    "decide_boolean_paper",
    "decide_boolean_strict",
    "enumerate_instances",
    "equivalent",
    "evaluate",
    "fact_universe",
    "find_homomorphism",
    "find_monotonicity_counterexample",
    "fresh_fact",
    "is_additive_syntactic",
    "is_connected",
    "is_redundant_atom",
    "minimize",
    "parse_document",
    "parse_instance",
    "partition_components",
    "result_tuple_in",
    "serialize",
    "statement_truth",
    "strip_heads",
    "validate_facts",
    "validate_instance",
]
