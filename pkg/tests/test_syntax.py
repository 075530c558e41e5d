import pytest
from hypothesis import given, settings

from decexc.syntax import (
    ZERO, Base, Comp, Copi1, Coprod, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap, Exc,
    Gen, Id, In, TermTypeError, canonical_axioms, check_consistent, check_wellformed,
    decorated_spec, infer_decoration, pure_op, subterms, undecorate, weak,
)
from decexc.handler import build_try_catch

from strategies import decorated_terms

A, B = Base("A"), Base("B")
NAT = Base("Nat")


def test_identity_is_pure():
    assert Id(A).deco is Deco.PURE
    assert infer_decoration(Id(A)) is Deco.PURE


def test_untag_after_tag_is_catcher(spec):
    t = Comp(spec.untag("1"), spec.tag("1"))
    assert t.src == t.tgt == NAT
    assert infer_decoration(t) is Deco.CTC


def test_downcast_is_propagator(spec):
    f = Gen("f", Base("X"), Base("Y"), Deco.PPG)
    g = Gen("g", NAT, Base("Y"), Deco.PPG)
    t = build_try_catch(f, [("1", g)], spec.with_ops(f, g))
    assert isinstance(t, Downcast)
    assert t.body.deco is Deco.CTC
    assert infer_decoration(t) is Deco.PPG


def test_composition_type_mismatch():
    with pytest.raises(TermTypeError):
        Comp(Gen("g", A, A, Deco.PURE), Gen("f", A, B, Deco.PURE))


def test_cotuple_left_must_propagate():
    k = Gen("k", A, B, Deco.CTC)
    with pytest.raises(TermTypeError):
        Cotuple(k, EmptyMap(B))


def test_semi_pure_cotuple_source():
    f = Gen("f", A, B, Deco.PPG)
    k = Gen("k", B, B, Deco.CTC)
    c = Cotuple(f, k)
    assert c.src == Coprod(A, B)
    assert c.deco is Deco.CTC
    assert Cotuple(f, Id(B)).deco is Deco.PPG


def test_coprod_rejects_zero():
    with pytest.raises(TermTypeError):
        Coprod(A, ZERO)


def test_explicit_nodes_carry_no_decoration():
    assert In(A).deco is None
    assert In(A).tgt == Coprod(A, Exc())


def test_canonical_spec_is_wellformed(spec):
    assert check_wellformed(spec) == []


def test_missing_cross_axiom_reported():
    s = decorated_spec(("A",), (), {"1": A, "2": A})
    diag_only = [a for a in s.axioms if a.rhs == Id(a.rhs.src)]
    broken = DecoratedSpec(s.types, s.ops, s.indices, s.params, tuple(diag_only))
    msgs = [str(v) for v in check_wellformed(broken)]
    assert any("missing cross axiom" in m for m in msgs)


def test_tag_arity_reported():
    s = decorated_spec(("A",), (), {"1": A})
    bad_tag = Gen("t1", ZERO, ZERO, Deco.PPG, "tag", "1")
    ops = tuple(g for g in s.ops if g.role != "tag") + (bad_tag,)
    broken = DecoratedSpec(s.types, ops, s.indices, s.params, s.axioms)
    assert any("tag arity" in str(v) for v in check_wellformed(broken))


def test_duplicate_axiom_reported():
    s = decorated_spec(("A",), (), {"1": A})
    doubled = s.with_axioms(*canonical_axioms(s))
    assert any("duplicate" in str(v) for v in check_wellformed(doubled))


def test_canonical_axioms_shape(spec):
    ax = canonical_axioms(spec)
    assert len(ax) == 4
    assert ax[0] == weak(Comp(spec.untag("1"), spec.tag("1")), Id(NAT))


def test_undecorate_has_throw():
    s = decorated_spec(("Nat",), (pure_op("n", "1", "Nat"),), {"1": NAT})
    app = undecorate(s)
    assert ("throw_1_Nat", NAT, NAT) in app.ops
    assert any(name == "n" for name, _, _ in app.ops)
    assert app.formations


def test_undecorate_empty():
    app = undecorate(decorated_spec((), (), {}))
    assert app.ops == () and app.formations == () and app.types == ()


@settings(max_examples=200, deadline=None)
@given(decorated_terms())
def test_generated_terms_are_consistent(t):
    assert check_consistent(t) == []
    assert infer_decoration(t) == t.deco


@settings(max_examples=200, deadline=None)
@given(decorated_terms())
def test_join_rule_on_compositions(t):
    for u in subterms(t):
        if isinstance(u, Comp):
            assert u.deco == max(u.outer.deco, u.inner.deco)
