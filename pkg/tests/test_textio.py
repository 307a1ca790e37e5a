from __future__ import annotations

import pytest

from cqkit import (
    ArityMismatch,
    DuplicateName,
    EmptyInstance,
    FactSet,
    Head,
    ParseError,
    ResultTuple,
    SchemeMismatch,
    Symbol,
    UnknownQuery,
    UnknownRelation,
    parse_document,
    parse_instance,
    serialize,
)
from conftest import FLIGHTS_INSTANCE, facts


def test_parse_flights_document(flights_doc):
    assert flights_doc.schema.names == ("Flights",)
    q = flights_doc.query("P")
    assert q.head.attributes == ("A", "B")
    assert q.body == facts("Flights(x,z)", "Flights(z,y)")


def test_parse_empty_head_and_body():
    doc = parse_document("schema R/1. query Q() :- true.")
    q = doc.query("Q")
    assert q.head == Head()
    assert q.body == FactSet()


def test_unsafe_query_accepted():
    doc = parse_document("schema R/1. query Q(A=x) :- true.")
    q = doc.query("Q")
    assert q.head.variables() == frozenset({Symbol("x")})
    assert not q.body


def test_positional_head_desugars_to_numbered_attributes():
    doc = parse_document("schema R/2. query Q(x, y) :- R(x,y).")
    assert doc.query("Q").head.attributes == ("1", "2")


def test_numbered_attributes_round_trip():
    doc = parse_document("schema R/2. query Q(x, y) :- R(x,y).")
    assert parse_document(serialize(doc)) == doc


def test_zero_arity_atom_vs_true_keyword():
    doc = parse_document("schema true/0, R/1. query Q() :- true().")
    assert doc.query("Q").body == facts("true()")
    doc2 = parse_document("schema true/0, R/1. query Q() :- true.")
    assert doc2.query("Q").body == FactSet()


def test_comments_and_whitespace():
    doc = parse_document(
        """
        # header comment
        schema R/2.   # trailing
        query Q(A=x)  :-
            R(x, y).  # body
        """
    )
    assert doc.query("Q").body == facts("R(x,y)")


def test_assert_declarations():
    doc = parse_document(
        """
        schema R/1, S/1.
        query A() :- R(x).
        query B() :- S(x).
        assert A <= B.
        """
    )
    assert doc.statements == (("A", "B"),)


def test_syntax_error_carries_location():
    with pytest.raises(ParseError) as err:
        parse_document("schema R/2.\nquery Q( :- R(x,y).")
    assert err.value.line == 2
    assert err.value.col == 10


def test_semantic_errors_carry_location():
    with pytest.raises(UnknownRelation) as err:
        parse_document("schema R/2.\nquery Q() :- T(x).")
    assert (err.value.line, err.value.col) == (2, 14)

    with pytest.raises(ArityMismatch) as err2:
        parse_document("schema R/2. query Q() :- R(x).")
    assert err2.value.line == 1

    with pytest.raises(DuplicateName):
        parse_document("schema R/2, R/1.")
    with pytest.raises(DuplicateName):
        parse_document("schema R/1. query Q(A=x, A=y) :- true.")
    with pytest.raises(DuplicateName):
        parse_document("schema R/1. query Q() :- true. query Q() :- R(x).")
    with pytest.raises(UnknownQuery):
        parse_document("schema R/1. query A() :- true. assert A <= B.")
    with pytest.raises(SchemeMismatch):
        parse_document(
            "schema R/1. query A() :- R(x). query B(A=y) :- R(y). assert A <= B."
        )


def test_reserved_fresh_namespace_rejected_in_query_text():
    with pytest.raises(ParseError):
        parse_document("schema R/1. query Q() :- R(_f0).")
    with pytest.raises(ParseError):
        parse_document("schema R/1. query Q(A=_f3) :- true.")
    # _f alone or _fx are ordinary identifiers, only _f<digits> is reserved
    parse_document("schema R/1. query Q() :- R(_f).")
    parse_document("schema R/1. query Q() :- R(_fx).")


def test_reserved_symbols_allowed_in_instance_data():
    # emitted witness instances mention _f symbols and must feed back in
    schema = parse_document("schema R/1.").schema
    assert parse_instance("R(_f12)", schema) == facts("R(_f12)")


def test_parse_instance_golden(flights_doc):
    inst = parse_instance(FLIGHTS_INSTANCE, flights_doc.schema)
    assert inst == facts(
        "Flights(Paris,Brussels)", "Flights(Brussels,Rome)", "Flights(Vienna,Paris)"
    )


def test_parse_instance_errors(flights_doc):
    with pytest.raises(EmptyInstance):
        parse_instance("", flights_doc.schema)
    with pytest.raises(EmptyInstance):
        parse_instance("# only a comment\n\n", flights_doc.schema)
    with pytest.raises(ArityMismatch) as err:
        parse_instance("Flights(Paris,Brussels)\nFlights(Rome)", flights_doc.schema)
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_instance("Flights(a,b) Flights(b,c)", flights_doc.schema)


def test_parse_instance_collapses_duplicates(flights_doc):
    inst = parse_instance("Flights(a,b)\nFlights(a,b)", flights_doc.schema)
    assert len(inst) == 1


def test_serialize_document_golden(flights_doc):
    assert serialize(flights_doc) == (
        "schema Flights/2.\nquery P(A=x, B=y) :- Flights(x,z), Flights(z,y).\n"
    )


def test_serialize_instance_sorted():
    fs = facts("T(b)", "R(c,a)", "R(a,b)")
    assert serialize(fs) == "R(a,b)\nR(c,a)\nT(b)\n"


def test_serialize_result_set():
    ts = {
        ResultTuple((("A", Symbol("Vienna")), ("B", Symbol("Brussels")))),
        ResultTuple((("A", Symbol("Paris")), ("B", Symbol("Rome")))),
    }
    assert serialize(frozenset(ts)) == "(A=Paris, B=Rome)\n(A=Vienna, B=Brussels)\n"
    assert serialize(frozenset()) == "<empty>\n"
    assert serialize(frozenset({ResultTuple()})) == "()\n"


def test_document_round_trip(flights_doc):
    assert parse_document(serialize(flights_doc)) == flights_doc


def test_instance_round_trip(flights_doc):
    inst = parse_instance(FLIGHTS_INSTANCE, flights_doc.schema)
    assert parse_instance(serialize(inst), flights_doc.schema) == inst
