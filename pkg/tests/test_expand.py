import random

import pytest
from hypothesis import given, settings, strategies as st

from decexc.expand import (
    UndecoratedNode, RULE_BATTERY_VERSION, catcher_form, discharge_syntactic,
    expand_equation, expand_rule, expand_spec, expand_term, explicit_spec, normalize,
    propagator_form, pure_form, rule_obligation,
)
from decexc.formats import print_equation, print_term
from decexc.generate import TermGen, random_instance
from decexc.handler import build_throw
from decexc.kernel import RULES
from decexc.syntax import (
    ZERO, Base, Comp, Deco, Downcast, ExplCotuple, Gen, Id, In, Ina, comp, decorated_spec,
    explicit_eq, ina, inn, strong, weak,
)
from decexc.syntax import EXC as EXC_, plus_e as Coprod_

from strategies import SPEC2, decorated_terms

Y = Base("Y")


def test_pure_generator_expands_to_itself(spec):
    succ = spec.op("succ")
    assert print_term(expand_term(succ)) == "succ"


def test_downcast_untag_is_propagation_on_e(spec):
    cf = normalize(catcher_form(Downcast(spec.untag("1"))))
    assert cf == ina(Base("Nat"))


def test_throw_expands_to_explicit_throw(spec):
    dec = build_throw("1", Y, spec)
    assert dec.deco is Deco.PPG
    assert expand_term(dec) == build_throw("1", Y, spec, explicit=True)
    assert print_term(expand_term(dec)) == "ina{Y} o t1"


def test_weak_axiom_expansion(spec):
    eq = weak(Comp(spec.untag("1"), spec.tag("1")), Id(Base("Nat")))
    assert print_equation(expand_equation(eq)) == "c1 o t1 == in{Nat}"


def test_reflexivity_expands_to_reflexivity(spec):
    f = spec.op("even")
    e = expand_equation(weak(f, f))
    assert e.lhs == e.rhs


def test_untag_tag_expansion(spec):
    eq = strong(Comp(spec.tag("1"), spec.untag("1")), Id(ZERO))
    assert print_equation(expand_equation(eq)) == "[t1 | id{E}] o c1 == id{E}"


def test_explicit_axioms_one_index():
    e = expand_spec(decorated_spec(("A",), (), {"1": Base("A")}))
    assert [print_equation(a) for a in e.axioms] == ["c1 o t1 == in{A}"]


def test_explicit_axioms_two_indices():
    e = expand_spec(decorated_spec(("A", "B"), (), {"1": Base("A"), "2": Base("B")}))
    got = {print_equation(a) for a in e.axioms}
    assert got == {"c1 o t1 == in{A}", "c2 o t2 == in{B}",
                   "c1 o t2 == ina{A} o t2", "c2 o t1 == ina{B} o t1"}


def test_no_indices_no_tags():
    e = expand_spec(decorated_spec(("A",), (), {}))
    assert e.ops == () and e.axioms == ()


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_expanded_spec_is_explicit_spec(seed):
    types, ops, params = random_instance(random.Random(seed), 4)
    assert expand_spec(decorated_spec(types, ops, params)) == explicit_spec(types, ops, params)


def test_normalize_examples():
    a, b = Base("A"), Base("B")
    f = Gen("f", a, Coprod_(b), None)
    k = Gen("k", EXC_, Coprod_(b), None)
    assert normalize(comp(ExplCotuple(f, k), inn(a))) == f
    assert normalize(comp(ExplCotuple(f, k), ina(a))) == k
    assert normalize(comp(Id(Coprod_(b), explicit=True), f)) == f
    assert normalize(ExplCotuple(inn(a), ina(a))) == Id(Coprod_(a), explicit=True)


@settings(max_examples=200, deadline=None)
@given(decorated_terms())
def test_normalize_idempotent(t):
    n = normalize(catcher_form(t))
    assert normalize(n) == n


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 100_000))
def test_functoriality(seed):
    gen = TermGen(SPEC2, random.Random(seed))
    f = gen.term(gen.types[seed % 2], 3)
    g = gen.term(f.tgt, 3)
    lhs = normalize(catcher_form(Comp(g, f)))
    rhs = normalize(comp(catcher_form(g), catcher_form(f)))
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(decorated_terms())
def test_pure_and_propagator_views_agree(t):
    if t.deco is Deco.PURE:
        assert normalize(propagator_form(t)) == normalize(comp(inn(t.tgt), pure_form(t)))


def test_explicit_node_rejected():
    with pytest.raises(UndecoratedNode):
        expand_term(In(Base("A")))


def test_associativity_is_syntactic():
    rep = expand_rule("a3", method="syntactic")
    assert rep.ok and rep.method == "syntactic"


def test_propagator_weak_to_strong_semantic():
    rep = expand_rule("b6", method="semantic")
    assert rep.ok and rep.method == "semantic"
    assert rep.models == 6 * 64


def test_cotuple_existence_discharged():
    rep = expand_rule("e2")
    assert rep.ok


def test_bogus_obligation_rejected():
    ctx = decorated_spec(("X", "Y"), (), {"1": Base("X")})
    ob = rule_obligation("b7", {"f": ctx.tag("1"), "g": ctx.tag("1")}, ctx)
    flipped = type(ob)(ob.premises, (explicit_eq(ob.conclusion[0].lhs, ob.conclusion[0].lhs),), ob.indices)
    assert discharge_syntactic(flipped, dict(ctx.params))
    wrong_lhs = catcher_form(Comp(ctx.untag("1"), ctx.tag("1")))
    wrong = type(ob)((), (explicit_eq(wrong_lhs, catcher_form(Id(Base("X")))),), ob.indices)
    assert not discharge_syntactic(wrong, dict(ctx.params))


def test_battery_version_is_stable():
    assert isinstance(RULE_BATTERY_VERSION, str) and RULE_BATTERY_VERSION


@pytest.mark.parametrize("rule", [r for r, v in RULES.items() if v.family != "leaf"])
def test_every_rule_expands(rule):
    assert expand_rule(rule).ok
