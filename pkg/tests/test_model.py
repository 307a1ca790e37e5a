from __future__ import annotations

import random

import pytest

from cqkit import (
    ArityMismatch,
    Atom,
    EmptyInstance,
    FactSet,
    Schema,
    Symbol,
    UnknownRelation,
    active_domain,
    atom,
    build_z,
    fresh_fact,
    validate_instance,
)
from conftest import facts


def test_symbol_equality_is_by_name():
    assert Symbol("Paris") == Symbol("Paris")
    assert Symbol("x") != Symbol("y")
    assert len({Symbol("a"), Symbol("a"), Symbol("b")}) == 2


@pytest.mark.parametrize("bad", ["", "1x", "a-b", "a b", "é"])
def test_symbol_name_pattern(bad):
    with pytest.raises(ValueError):
        Symbol(bad)


def test_schema_requires_relations():
    with pytest.raises(ValueError):
        Schema({})
    with pytest.raises(ValueError):
        Schema({"R": -1})
    s = Schema({"R": 2, "T": 1})
    assert s.names == ("R", "T")
    assert s.arity("R") == 2
    assert "T" in s and "S" not in s
    with pytest.raises(UnknownRelation):
        s.arity("S")


def test_factset_set_semantics():
    a = facts("R(a,b)", "R(a,b)", "T(b)")
    b = facts("T(b)", "R(a,b)")
    assert a == b
    assert len(a) == 2
    assert str(a) == "{R(a,b), T(b)}"


def test_active_domain_examples():
    assert active_domain(facts("Flights(Paris,Brussels)")) == frozenset(
        {Symbol("Paris"), Symbol("Brussels")}
    )
    assert active_domain(FactSet()) == frozenset()
    assert active_domain(facts("R(a,b)", "T(b)")) == frozenset(
        {Symbol("a"), Symbol("b")}
    )


def test_active_domain_distributes_over_union():
    rng = random.Random(7)
    names = ["R", "S", "T"]
    for _ in range(50):
        mk = lambda: FactSet(
            Atom(
                rng.choice(names),
                tuple(Symbol(rng.choice("abcdef")) for _ in range(rng.randint(0, 3))),
            )
            for _ in range(rng.randint(0, 4))
        )
        a, b = mk(), mk()
        assert active_domain(a | b) == active_domain(a) | active_domain(b)


def test_validate_instance():
    s = Schema({"R": 2})
    validate_instance(s, facts("R(a,b)"))
    with pytest.raises(EmptyInstance):
        validate_instance(s, FactSet())
    with pytest.raises(ArityMismatch) as err:
        validate_instance(s, facts("R(a)"))
    assert (err.value.name, err.value.expected, err.value.got) == ("R", 2, 1)
    with pytest.raises(UnknownRelation):
        validate_instance(s, facts("T(a)"))


def test_build_z_examples():
    a = Symbol("a")
    assert build_z(Schema({"R": 2, "T": 1}), a) == facts("R(a,a)", "T(a)")
    assert build_z(Schema({"R": 0}), a) == facts("R()")


def test_build_z_shape():
    rng = random.Random(13)
    for _ in range(30):
        rels = {f"R{i}": rng.randint(1, 3) for i in range(rng.randint(1, 3))}
        s = Schema(rels)
        z = build_z(s, Symbol("a"))
        assert len(z) == len(s)
        assert active_domain(z) == frozenset({Symbol("a")})


def test_fresh_fact_examples():
    f = fresh_fact("T", 2, {Symbol("x")})
    assert f.relation == "T"
    assert len(set(f.args)) == 2
    assert Symbol("x") not in f.args

    assert fresh_fact("S", 0) == Atom("S", ())

    g = fresh_fact("R", 3, {Symbol("a"), Symbol("b")})
    assert len(set(g.args)) == 3
    assert not set(g.args) & {Symbol("a"), Symbol("b")}


def test_fresh_fact_avoids_reserved_collisions():
    avoid = {Symbol("_f0"), Symbol("_f2"), Symbol("x")}
    f = fresh_fact("R", 3, avoid)
    assert len(set(f.args)) == 3
    assert not set(f.args) & avoid


def test_atom_helper_and_ordering():
    assert atom("R", "x", "y") == Atom("R", (Symbol("x"), Symbol("y")))
    assert sorted([atom("T", "a"), atom("R", "b"), atom("R", "a")]) == [
        atom("R", "a"),
        atom("R", "b"),
        atom("T", "a"),
    ]
