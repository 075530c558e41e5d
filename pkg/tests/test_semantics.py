import random

import pytest
from hypothesis import given, settings, strategies as st

from decexc.expand import catcher_form
from decexc.generate import random_terms, term_battery
from decexc.semantics import (
    Exceptional, Ordinary, ValueOutsideCarrier, commutation_witness, corrupt_untag,
    counterexample, eval_decorated, eval_explicit, evaluate, intended_model, models_for,
    oracle_holds, theorem_444_check,
)
from decexc.syntax import ZERO, Base, Comp, Deco, Downcast, Gen, Id, plus_e, strong, weak

NAT, BOOL = Base("Nat"), Base("Bool")


def test_untag_recovers_its_own_parameter(spec, model):
    assert evaluate(spec.untag("1"), model, Exceptional("1", "n2")) == Ordinary("n2")


def test_untag_propagates_other_exceptions(spec, model):
    assert evaluate(spec.untag("1"), model, Exceptional("2", "tt")) == Exceptional("2", "tt")


def test_identity(model):
    for v in model.values(plus_e(NAT)):
        assert evaluate(Id(NAT), model, v) == v


def test_pure_propagates(spec, model):
    assert evaluate(spec.op("succ"), model, Exceptional("2", "ff")) == Exceptional("2", "ff")
    assert evaluate(spec.op("succ"), model, Ordinary("n2")) == Ordinary("n0")


def test_downcast(spec, model):
    k = Comp(spec.untag("1"), spec.tag("1"))
    dk = Downcast(k)
    assert evaluate(dk, model, Exceptional("1", "n1")) == Exceptional("1", "n1")
    assert evaluate(dk, model, Ordinary("n1")) == evaluate(k, model, Ordinary("n1"))
    assert evaluate(k, model, Exceptional("1", "n1")) == Ordinary("n1")


def test_strong_and_weak_axioms(spec, model):
    lhs = Comp(spec.untag("1"), spec.tag("1"))
    assert oracle_holds(weak(lhs, Id(NAT)), model)
    cx = counterexample(strong(lhs, Id(NAT)), model)
    assert cx is not None
    v, a, b = cx
    assert isinstance(v, Exceptional) and v.index == "1"
    assert a == Ordinary(v.atom) and b == v


@pytest.mark.parametrize("seed", range(5))
def test_untag_tag_holds_everywhere(spec, seed):
    eq = weak(Comp(spec.tag("1"), spec.untag("1")), Id(ZERO))
    assert all(oracle_holds(eq, m) for m in models_for(spec, 20, seed))
    eq = strong(eq.lhs, eq.rhs)
    assert all(oracle_holds(eq, m) for m in models_for(spec, 20, seed))


def test_value_outside_carrier(spec, model):
    with pytest.raises(ValueOutsideCarrier):
        eval_decorated(spec.op("succ"), model, Ordinary("n9"))


def test_corrupted_untag_detected(spec, model):
    assert theorem_444_check(spec, model).ok
    bad = theorem_444_check(spec, corrupt_untag(model, "1"))
    assert not bad.ok and bad.witness["input"]


def test_weak_within_strong(spec, model):
    """A strong equation holds only if its weak counterpart holds."""
    for m in models_for(spec, 30, 3):
        for lhs, rhs in [(Comp(spec.untag("1"), spec.tag("1")), Id(NAT)),
                         (Comp(spec.tag("2"), spec.untag("2")), Id(ZERO)),
                         (spec.op("succ"), spec.op("succ"))]:
            if oracle_holds(strong(lhs, rhs), m):
                assert oracle_holds(weak(lhs, rhs), m)


BATTERY = term_battery(range(3), (1, 2))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, len(BATTERY) - 1), st.integers(0, 10_000))
def test_decorated_matches_explicit(k, seed):
    spec, m = BATTERY[k]
    for t in random_terms(spec, 10, 5, seed):
        assert commutation_witness(t, m) is None


@settings(max_examples=80, deadline=None)
@given(st.integers(0, len(BATTERY) - 1), st.integers(0, 10_000))
def test_propagators_propagate(k, seed):
    spec, m = BATTERY[k]
    for t in random_terms(spec, 10, 5, seed):
        if t.deco <= Deco.PPG:
            for e in m.values(plus_e(ZERO)):
                assert evaluate(t, m, e) == e
