"""Command-line front end.

Every subcommand reads a document file (-d) and prints a deterministic
report; --json switches to a single-line JSON document (with --stable
dropping the timing field so output is byte-identical across runs).

Exit codes: 0 affirmative verdict (contained / monotone / no discrepancy),
1 negative verdict, 2 usage, parse, or validation errors, 3 exhausted
budgets or oversized enumeration bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import BoundsTooLarge, BudgetExceeded, CQError, NotMonotoneInput
from .model import ContainmentStatement, FactSet, Head, Query
from .engine import EvalBudget, contains, evaluate, minimize
from .monotonicity import (
    VerdictKind,
    analyze,
    compile_to_nonemptiness,
    decide_boolean_paper,
    decide_boolean_strict,
    strip_heads,
)
from .oracle import (
    Bounds,
    check_compiled_equivalence,
    enumerate_instances,
    find_monotonicity_counterexample,
)
from .structure import components
from .textio import Document, parse_document, parse_instance, serialize

Report = tuple[int, dict, list[str]]  # exit code, json payload, text lines


def _load_document(path: str) -> Document:
    return parse_document(Path(path).read_text())


def _inline(fs: FactSet) -> str:
    return str(fs)


def _facts(fs: FactSet) -> list[str]:
    return [str(f) for f in fs.sorted()]


def _witness_json(pair: tuple[FactSet, FactSet]) -> dict:
    return {"I": _facts(pair[0]), "J": _facts(pair[1])}


def _witness_lines(pair: tuple[FactSet, FactSet], label: str = "witness") -> list[str]:
    return [f"{label}.I: {_inline(pair[0])}", f"{label}.J: {_inline(pair[1])}"]


def _bounds_of(args: argparse.Namespace) -> Bounds:
    return Bounds(args.domain, args.max_facts, args.universe_cap)


def _bounds_json(b: Bounds) -> dict:
    return {"domain": b.domain_size, "max_facts": b.max_facts}


def _cmd_eval(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    q = doc.query(args.query)
    inst = parse_instance(Path(args.instance).read_text(), doc.schema)
    budget = None
    if args.max_results is not None or args.max_steps is not None:
        budget = EvalBudget(max_results=args.max_results, max_steps=args.max_steps)
    result = evaluate(q, inst, budget)
    lines = serialize(result).splitlines()
    report = {"command": "eval", "query": args.query, "results": sorted(str(t) for t in result)}
    return 0, report, lines


def _cmd_contains(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    held = contains(doc.query(args.query), doc.query(args.rhs))
    verdict = "contained" if held else "not-contained"
    report = {"command": "contains", "lhs": args.query, "rhs": args.rhs, "verdict": verdict}
    return (0 if held else 1), report, [f"contained: {'true' if held else 'false'}"]


def _cmd_minimize(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    m = minimize(doc.query(args.query))
    text = serialize(m).strip()
    return 0, {"command": "minimize", "query": args.query, "minimized": text}, [text]


def _cmd_components(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    parts = components(doc.query(args.query).body)
    lines = [f"components: {len(parts)}"]
    lines += [f"component {i}: {_inline(c)}" for i, c in enumerate(parts, start=1)]
    report = {
        "command": "components",
        "query": args.query,
        "components": [_facts(c) for c in parts],
    }
    return 0, report, lines


def _cmd_monotone(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    st = ContainmentStatement(doc.query(args.lhs), doc.query(args.rhs))
    bounds = _bounds_of(args)
    headed = bool(st.lhs.head.entries or st.rhs.head.entries)
    verdict = analyze(st, doc.schema, bounds, mode=args.mode)

    report: dict = {
        "command": "monotone",
        "mode": args.mode,
        "lhs": args.lhs,
        "rhs": args.rhs,
        "verdict": verdict.kind.value,
        "certificate": None,
        "compiled": None,
        "witness": None,
        "bounds": _bounds_json(bounds) if headed else None,
    }
    lines = [
        "command: monotone",
        f"mode: {args.mode}",
        f"lhs: {args.lhs}",
        f"rhs: {args.rhs}",
        f"verdict: {verdict.kind.value}",
    ]

    if verdict.kind is VerdictKind.MONOTONE:
        if verdict.compiled_body is None:
            lines.append("certificate: none (paper mode reports the acceptance bit only)")
        else:
            compiled = serialize(Query("compiled", Head(), verdict.compiled_body)).strip()
            report["certificate"] = "compiled-body"
            report["compiled"] = compiled
            lines.append(f"compiled: {compiled}")
        code = 0
    elif verdict.kind is VerdictKind.BOUNDED_MONOTONE:
        report["certificate"] = "bounds"
        lines.append(f"bounds: domain={bounds.domain_size} max-facts={bounds.max_facts}")
        code = 0
    elif verdict.kind is VerdictKind.REFUTED_VIA_HEAD_LEMMA:
        assert verdict.witness is not None
        report["certificate"] = "stripped-witness-pair"
        report["witness"] = _witness_json(verdict.witness)
        lines += _witness_lines(verdict.witness, "stripped-witness")
        code = 1
    else:  # NOT_MONOTONE
        if verdict.witness is not None:
            report["certificate"] = "witness-pair"
            report["witness"] = _witness_json(verdict.witness)
            lines += _witness_lines(verdict.witness)
        else:
            lines.append("certificate: none (paper mode reports the acceptance bit only)")
        code = 1
    return code, report, lines


def _cmd_compile(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    st = ContainmentStatement(doc.query(args.lhs), doc.query(args.rhs))
    try:
        compiled = compile_to_nonemptiness(st, doc.schema)
    except NotMonotoneInput:
        stripped = (
            st if not (st.lhs.head.entries or st.rhs.head.entries) else strip_heads(st)
        )
        verdict = decide_boolean_strict(stripped, doc.schema)
        report = {
            "command": "compile",
            "lhs": args.lhs,
            "rhs": args.rhs,
            "verdict": verdict.kind.value,
            "compiled": None,
            "witness": _witness_json(verdict.witness) if verdict.witness else None,
        }
        lines = ["command: compile", f"verdict: {verdict.kind.value}"]
        if verdict.witness:
            lines += _witness_lines(verdict.witness)
        return 1, report, lines
    text = serialize(compiled).strip()
    report = {
        "command": "compile",
        "lhs": args.lhs,
        "rhs": args.rhs,
        "verdict": "monotone",
        "compiled": text,
        "witness": None,
    }
    return 0, report, ["command: compile", "verdict: monotone", f"compiled: {text}"]


def _cmd_verify(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    st = ContainmentStatement(doc.query(args.lhs), doc.query(args.rhs))
    bounds = _bounds_of(args)
    headed = bool(st.lhs.head.entries or st.rhs.head.entries)
    stripped = strip_heads(st) if headed else st

    strict = decide_boolean_strict(stripped, doc.schema)
    paper = decide_boolean_paper(stripped, doc.schema)
    pair = find_monotonicity_counterexample(stripped, doc.schema, bounds)

    strict_monotone = strict.kind is VerdictKind.MONOTONE
    strict_vs_oracle = strict_monotone == (pair is None)
    paper_vs_strict = paper == strict_monotone

    cert_failure: FactSet | None = None
    if strict_monotone:
        assert strict.compiled_body is not None
        compiled = Query("compiled", Head(), strict.compiled_body)
        cert_failure = check_compiled_equivalence(stripped, compiled, doc.schema, bounds)
    cert_ok = cert_failure is None

    discrepancy = not (strict_vs_oracle and paper_vs_strict and cert_ok)

    lines = [
        "command: verify",
        f"lhs: {args.lhs}",
        f"rhs: {args.rhs}",
        f"bounds: domain={bounds.domain_size} max-facts={bounds.max_facts}",
        f"stripped: {'yes' if headed else 'no'}",
        f"strict: {strict.kind.value}",
        f"paper: {'accept' if paper else 'reject'}",
    ]
    report: dict = {
        "command": "verify",
        "lhs": args.lhs,
        "rhs": args.rhs,
        "bounds": _bounds_json(bounds),
        "stripped": headed,
        "strict": strict.kind.value,
        "paper": "accept" if paper else "reject",
        "oracle_witness": _witness_json(pair) if pair else None,
        "strict_vs_oracle": "agree" if strict_vs_oracle else "disagree",
        "paper_vs_strict": "agree" if paper_vs_strict else "disagree",
        "certificate_check": (
            "n/a" if not strict_monotone else ("ok" if cert_ok else "failed")
        ),
        "discrepancy": discrepancy,
    }
    if pair:
        lines.append("oracle: counterexample found")
        lines += _witness_lines(pair, "oracle-witness")
    else:
        lines.append("oracle: no counterexample within bounds")
    lines.append(f"strict-vs-oracle: {report['strict_vs_oracle']}")
    lines.append(f"paper-vs-strict: {report['paper_vs_strict']}")
    if not strict_monotone:
        lines.append("certificate-check: n/a")
    elif cert_ok:
        lines.append("certificate-check: ok")
    else:
        lines.append(f"certificate-check: failed on {_inline(cert_failure)}")

    if headed:
        original_pair = find_monotonicity_counterexample(st, doc.schema, bounds)
        report["original_oracle_witness"] = (
            _witness_json(original_pair) if original_pair else None
        )
        if original_pair:
            lines.append("original-oracle: counterexample found")
            lines += _witness_lines(original_pair, "original-witness")
        else:
            lines.append("original-oracle: no counterexample within bounds")

    lines.append(f"discrepancy: {'yes' if discrepancy else 'no'}")
    return (1 if discrepancy else 0), report, lines


def _cmd_enumerate(args: argparse.Namespace) -> Report:
    doc = _load_document(args.doc)
    bounds = _bounds_of(args)
    if args.count:
        n = sum(1 for _ in enumerate_instances(doc.schema, bounds))
        return 0, {"command": "enumerate", "count": n, "bounds": _bounds_json(bounds)}, [
            f"count: {n}"
        ]
    instances = [_inline(i) for i in enumerate_instances(doc.schema, bounds)]
    report = {
        "command": "enumerate",
        "count": len(instances),
        "instances": instances,
        "bounds": _bounds_json(bounds),
    }
    return 0, report, instances


def _add_bounds_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--domain", type=int, default=3, help="max distinct symbols (default 3)")
    p.add_argument(
        "--max-facts", type=int, default=6, help="max facts per instance (default 6)"
    )
    p.add_argument(
        "--universe-cap",
        type=int,
        default=24,
        help="refuse enumerations over more possible facts than this (default 24)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqkit",
        description="Conjunctive-query containment, monotonicity, and compilation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", "--doc", required=True, help="document file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--stable", action="store_true", help="omit timing from --json output"
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a query over an instance")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("-i", "--instance", required=True, help="instance file")
    p.add_argument("--max-results", type=int, default=None)
    p.add_argument("--max-steps", type=int, default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("contains", parents=[common], help="decide query containment")
    p.add_argument("-q", "--query", required=True, help="left query")
    p.add_argument("-r", "--rhs", required=True, help="right query")
    p.set_defaults(func=_cmd_contains)

    p = sub.add_parser("minimize", parents=[common], help="remove redundant body atoms")
    p.add_argument("-q", "--query", required=True)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser(
        "components", parents=[common], help="connected components of a query body"
    )
    p.add_argument("-q", "--query", required=True)
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser(
        "monotone", parents=[common], help="decide monotonicity of lhs <= rhs"
    )
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument(
        "--mode",
        choices=("strict", "paper"),
        default="strict",
        help="strict emits certificates; paper is the published acceptance test",
    )
    _add_bounds_flags(p)
    p.set_defaults(func=_cmd_monotone)

    p = sub.add_parser(
        "compile", parents=[common], help="compile a monotone statement to nonemptiness"
    )
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser(
        "verify", parents=[common], help="cross-check deciders against the oracle"
    )
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    _add_bounds_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "enumerate", parents=[common], help="enumerate instances within bounds"
    )
    p.add_argument("--count", action="store_true", help="print only the instance count")
    _add_bounds_flags(p)
    p.set_defaults(func=_cmd_enumerate)

    return parser


def run(argv: list[str]) -> int:
    """Execute one invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    start = time.perf_counter()
    try:
        code, report, lines = args.func(args)
    except (BudgetExceeded, BoundsTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except CQError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    if args.json:
        payload = dict(report)
        if not args.stable:
            payload["elapsed_ms"] = round(elapsed_ms, 3)
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
