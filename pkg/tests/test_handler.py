import random

import pytest
from hypothesis import given, settings, strategies as st

from decexc.formats import print_term
from decexc.handler import (
    DecorationTooHigh, EmptyClauseList, HandlerTypeMismatch, UnknownIndex, build_TRY,
    build_throw, build_try_catch, clause_lists, differential_handler_test, handler_battery,
    java_reference_eval,
)
from decexc.semantics import Exceptional, Ordinary, evaluate, intended_model, random_table
from decexc.syntax import ZERO, Base, Deco, Downcast, Gen, decorated_spec, plus_e

X, Y, A = Base("X"), Base("Y"), Base("A")
SPEC = decorated_spec(("X", "Y", "A"), (), {"1": A, "2": Y, "3": A})
F = Gen("f", X, Y, Deco.PPG)
G = Gen("g", A, Y, Deco.PPG)
H = Gen("h", Y, Y, Deco.PPG)
K = Gen("k", A, Y, Deco.PPG)
CTX = SPEC.with_ops(F, G, H, K)


def test_throw(spec):
    t = build_throw("1", Y, spec)
    assert print_term(t) == "[]{Y} o t1" and t.deco is Deco.PPG
    assert print_term(build_throw("1", Y, spec, explicit=True)) == "ina{Y} o t1"


def test_throw_unknown_index(spec):
    with pytest.raises(UnknownIndex):
        build_throw("7", Y, spec)


def test_one_clause():
    t = build_try_catch(F, [("1", G)], CTX)
    assert print_term(t) == "down([id{Y} | [g | []{Y}] o c1] o f)"
    short = build_try_catch(F, [("1", G)], CTX, short=True)
    assert print_term(short) == "down([id{Y} | g o c1] o f)"
    assert print_term(t) == print_term(Downcast(build_TRY(F, [("1", G)], CTX)))


def test_two_clauses():
    t = build_try_catch(F, [("1", G), ("2", H)], CTX)
    assert print_term(t) == "down([id{Y} | [g | [h | []{Y}] o c2] o c1] o f)"
    short = build_try_catch(F, [("1", G), ("2", H)], CTX, short=True)
    assert print_term(short) == "down([id{Y} | [g | h o c2] o c1] o f)"


def test_three_clauses_end_in_empty():
    t = build_try_catch(F, [("1", G), ("2", H), ("3", K)], CTX)
    assert print_term(t) == "down([id{Y} | [g | [h | [k | []{Y}] o c3] o c2] o c1] o f)"


def test_errors():
    with pytest.raises(EmptyClauseList):
        build_try_catch(F, [], CTX)
    catcher = Gen("k2", A, Y, Deco.CTC)
    with pytest.raises(DecorationTooHigh):
        build_try_catch(F, [("1", catcher)], CTX.with_ops(catcher))
    with pytest.raises(HandlerTypeMismatch):
        build_try_catch(F, [("2", G)], CTX)


def test_reference_examples():
    assert java_reference_eval(lambda x: Ordinary("y0"), [("1", lambda a: 1 / 0)], None) == Ordinary("y0")
    calls = []
    r = java_reference_eval(lambda x: Exceptional("1", "a0"),
                            [("1", lambda a: Ordinary("g1")), ("1", lambda a: calls.append(a))], None)
    assert r == Ordinary("g1") and calls == []
    assert java_reference_eval(lambda x: Exceptional("2", "b"), [("1", lambda a: Ordinary("g"))],
                               None) == Exceptional("2", "b")


def test_clause_lists_include_duplicates():
    lists = clause_lists(("1", "2"), 3)
    assert ("1", "1") in lists and len(lists) == 2 + 4 + 8


def test_differential_exhaustive():
    rep = differential_handler_test(handler_battery(1))
    assert rep.ok and rep.covered == rep.expected_coverage


def test_differential_detects_corruption():
    rep = differential_handler_test(handler_battery(1), corrupt=True)
    assert not rep.ok
    assert rep.divergence["got"] != rep.divergence["expected"]


def _model(seed):
    rng = random.Random(seed)
    sizes = [rng.randint(0, 2) for _ in range(3)]
    m = intended_model({"X": [f"x{k}" for k in range(sizes[0])],
                        "Y": [f"y{k}" for k in range(sizes[1])],
                        "A": [f"a{k}" for k in range(sizes[2])]}, dict(SPEC.params))
    tables = {}
    for g in (F, G, H, K):
        tab = random_table(m, g, rng)
        if tab is None:
            return None
        tables[g.name] = tab
    return m.with_tables(**tables)


def _same(s, t, m):
    return all(evaluate(s, m, v) == evaluate(t, m, v) for v in m.values(plus_e(s.src)))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000), st.sampled_from(["1", "2", "3"]))
def test_catch_raise(seed, i):
    m = _model(seed)
    if m is None:
        return
    t = build_try_catch(F, [(i, build_throw(i, Y, CTX))], CTX)
    assert _same(t, F, m)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_catch_catch(seed):
    m = _model(seed)
    if m is None:
        return
    a = build_try_catch(F, [("1", G), ("2", H)], CTX)
    b = build_try_catch(F, [("2", H), ("1", G)], CTX)
    assert _same(a, b, m)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_handler_propagates_and_try_differs(seed):
    m = _model(seed)
    if m is None:
        return
    clauses = [("1", G), ("3", K)]
    down = build_try_catch(F, clauses, CTX)
    TRY = build_TRY(F, clauses, CTX)
    for v in m.values(X):
        assert evaluate(down, m, v) == evaluate(TRY, m, v)
    for e in m.values(plus_e(ZERO)):
        assert evaluate(down, m, e) == e
        body = dict(clauses).get(e.index)
        if body is not None:
            assert evaluate(TRY, m, e) == evaluate(body, m, Ordinary(e.atom))
        else:
            assert evaluate(TRY, m, e) == e
