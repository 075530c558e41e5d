import random

import pytest
from hypothesis import given, settings, strategies as st

from decexc.data import load_spec
from decexc.expand import expand_spec, expand_term
from decexc.formats import (
    DecorationAnnotationConflict, SpecSyntaxError, UnknownIdentifier, parse_equation,
    parse_explicit_spec, parse_model, parse_proof, parse_spec, parse_term, parse_value,
    print_equation, print_explicit_spec, print_model, print_spec, print_term, print_value,
)
from decexc.generate import TermGen, random_instance, term_battery
from decexc.proofs import build_library, render
from decexc.syntax import Deco, decorated_spec, strong, weak

from strategies import SPEC2, decorated_terms

EXPLICIT2 = expand_spec(SPEC2)


@settings(max_examples=300, deadline=None)
@given(decorated_terms())
def test_term_round_trip(t):
    assert parse_term(print_term(t), SPEC2) == t


@settings(max_examples=150, deadline=None)
@given(decorated_terms())
def test_explicit_term_round_trip(t):
    e = expand_term(t)
    assert parse_term(print_term(e), EXPLICIT2, explicit=True) == e


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_equation_round_trip(seed):
    gen = TermGen(SPEC2, random.Random(seed))
    lhs = gen.term(gen.types[seed % 2], 3)
    for eq in (strong(lhs, lhs), weak(lhs, lhs)):
        assert parse_equation(print_equation(eq), SPEC2) == eq


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_spec_round_trip(seed, shorthand):
    types, ops, params = random_instance(random.Random(seed))
    s = decorated_spec(types, ops, params)
    assert parse_spec(print_spec(s, shorthand)) == s


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_explicit_spec_round_trip(seed):
    types, ops, params = random_instance(random.Random(seed))
    e = expand_spec(decorated_spec(types, ops, params))
    assert parse_explicit_spec(print_explicit_spec(e)) == e


def test_shipped_spec_round_trip(spec):
    assert parse_spec(print_spec(spec, True)) == spec
    assert parse_spec(print_spec(spec)) == spec


@pytest.mark.parametrize("entry", build_library(), ids=lambda e: e.name)
def test_proof_round_trip(entry):
    pf = parse_proof(render(entry), load_spec=load_spec)
    assert pf.derivation == entry.derivation
    assert pf.context == entry.context


def test_model_round_trip():
    for spec, m in term_battery(range(3), (1, 2))[:20]:
        again = parse_model(print_model(m), spec)
        assert again.carriers == m.carriers
        assert dict(again.params) == dict(m.params)
        assert again.tables == {k: v for k, v in m.tables.items() if v}


@pytest.mark.parametrize("text", ["n0", "throws 1(n2)", "inl(x0)", "throws 2(inr(tt))"])
def test_value_round_trip(text):
    assert print_value(parse_value(text)) == text


def test_unknown_identifier(spec):
    with pytest.raises(UnknownIdentifier):
        parse_term("nope o succ", spec)


def test_annotation_conflict():
    with pytest.raises(DecorationAnnotationConflict):
        parse_spec("types: A\nops:\n  t1 : A -> 0 [pure]\nexceptions:\n  1 : A\n")


def test_annotation_agreeing_is_accepted():
    s = parse_spec("types: A\nops:\n  t1 : A -> 0 [ppg]\nexceptions:\n  1 : A\n")
    assert s.tag("1").deco is Deco.PPG


def test_syntax_error_has_position():
    with pytest.raises(SpecSyntaxError) as err:
        parse_spec("types: A\nops:\n  f : A -> \n")
    assert "3" in str(err.value)


def test_throw_and_try_are_macros(spec):
    t = parse_term("try succ catch(1 => succ)", spec)
    assert t.deco is Deco.PPG
    assert parse_term("throw{1, Bool}", spec).deco is Deco.PPG
