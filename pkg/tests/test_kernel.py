import dataclasses

import pytest

from decexc.kernel import (
    RULES, BadSubstitution, Decl, DecorationSideConditionViolated, Derivation, LeafError,
    PremiseMismatch, TypeJ, UnknownRule, WrongPremiseCount, apply_rule, check_derivation,
    derive_decl, instantiate, node, rule_families, weaken,
)
from decexc.proofs import Prover, build_library
from decexc.semantics import counterexample, intended_model
from decexc.syntax import (
    Base, Comp, Deco, Downcast, EmptyMap, Gen, Id, Strength, decorated_spec, strong, weak,
)

A, Y = Base("A"), Base("Y")
LIBRARY = build_library()


def test_rule_families_cover_every_rule():
    fam = rule_families()
    assert sorted(fam) == ["a", "b", "c", "d", "e", "f", "sp"]
    assert len(fam["a"]) == 10 and len(fam["b"]) == 12
    assert fam["c"] == ["c1", "c2"] and len(fam["f"]) == 3
    assert sum(len(v) for v in fam.values()) == len(RULES) - 3


def test_composition_of_catchers(spec):
    k = Comp(spec.untag("1"), spec.tag("1"))
    concl = apply_rule("a1", {"f": spec.tag("1"), "g": spec.untag("1")},
                       [Decl(spec.tag("1"), Deco.CTC), Decl(spec.untag("1"), Deco.CTC)], spec)
    assert concl == Decl(k, Deco.CTC)


def test_strong_implies_weak(spec):
    f = spec.op("succ")
    concl = apply_rule("b7", {"f": f, "g": f}, [strong(f, f)], spec)
    assert concl == weak(f, f)


def test_downcast_declares_propagator(spec):
    k = Comp(spec.untag("1"), spec.tag("1"))
    d = derive_decl(Downcast(k), Deco.PPG, spec)
    assert check_derivation(d, spec).ok
    assert d.conclusion == Decl(Downcast(k), Deco.PPG)


def test_catcher_cannot_be_declared_lower(spec):
    with pytest.raises(DecorationSideConditionViolated):
        derive_decl(spec.untag("1"), Deco.PPG, spec)


def test_unknown_rule_and_bad_substitution(spec):
    with pytest.raises(UnknownRule):
        instantiate("z9", {}, spec)
    with pytest.raises(BadSubstitution):
        instantiate("a6", {"g": spec.op("succ")}, spec)
    with pytest.raises(BadSubstitution):
        instantiate("type", {"X": "Nat"}, spec)


def test_wrong_premise_count(spec):
    f = spec.op("succ")
    with pytest.raises(WrongPremiseCount):
        apply_rule("a6", {"f": f}, [], spec)


def test_premise_mismatch(spec):
    f, g = spec.op("succ"), spec.op("even")
    with pytest.raises(PremiseMismatch) as err:
        apply_rule("a6", {"f": f}, [Decl(g, Deco.CTC)], spec)
    assert err.value.position == 0


def test_weak_substitution_needs_pure_term():
    s = decorated_spec(("A", "Y"), (), {"1": A})
    f = Gen("f", A, Y, Deco.PPG)
    g1, g2 = Gen("g1", Y, Y, Deco.CTC), Gen("g2", Y, Y, Deco.CTC)
    ctx = s.with_ops(f, g1, g2).with_axioms(weak(g1, g2))
    with pytest.raises(DecorationSideConditionViolated):
        apply_rule("b11", {"f": f, "g1": g1, "g2": g2}, [Decl(f, Deco.PPG), weak(g1, g2)], ctx)
    fp = Gen("f", A, Y, Deco.PURE)
    ctx = s.with_ops(fp, g1, g2).with_axioms(weak(g1, g2))
    concl = apply_rule("b11", {"f": fp, "g1": g1, "g2": g2}, [Decl(fp, Deco.PURE), weak(g1, g2)], ctx)
    assert concl == weak(Comp(g1, fp), Comp(g2, fp))


def test_non_axiom_leaf_rejected(spec):
    bogus = strong(Comp(spec.untag("1"), spec.tag("1")), Id(Base("Nat")))
    with pytest.raises(LeafError):
        node("axiom", {"eq": bogus}, ctx=spec)
    pv = Prover(spec)
    assert pv.axiom(weak(bogus.lhs, bogus.rhs)).conclusion.strength is Strength.WEAK


def test_undeclared_generator_leaf(spec):
    ghost = Gen("ghost", Base("Nat"), Base("Nat"), Deco.PURE)
    with pytest.raises(LeafError):
        node("gen", {"f": ghost, "d": Deco.PURE}, ctx=spec)
    with pytest.raises(LeafError):
        node("type", {"X": Base("Nope")}, ctx=spec)
    assert node("type", {"X": Base("Nat")}, ctx=spec).conclusion == TypeJ(Base("Nat"))


def test_distinct_tags_not_weakly_equal():
    """Two tags on the same parameter differ on every ordinary input, so no
    sound derivation concludes that they are weakly equal."""
    s = decorated_spec(("A",), (), {"1": A, "2": A})
    eq = weak(s.tag("1"), s.tag("2"))
    m = intended_model({"A": ["a0"]}, dict(s.params))
    assert counterexample(eq, m) is not None
    with pytest.raises(LeafError):
        node("axiom", {"eq": eq}, ctx=s)


def _replace_at(d: Derivation, path: list, fn) -> Derivation:
    if not path:
        return fn(d)
    k, rest = path[0], path[1:]
    prem = list(d.premises)
    prem[k] = _replace_at(prem[k], rest, fn)
    return dataclasses.replace(d, premises=tuple(prem))


@pytest.mark.parametrize("entry", LIBRARY[:4], ids=lambda e: e.name)
def test_relabelled_node_is_rejected_there(entry):
    d = entry.derivation
    path = [0]
    while d.premises and len(path) < 3 and _at(d, path).premises:
        path.append(0)
    target = _at(d, path)
    other = "a7" if target.rule != "a7" else "a6"
    bad = _replace_at(d, path, lambda n: dataclasses.replace(n, rule=other))
    v = check_derivation(bad, entry.context)
    assert not v.ok
    failed = [n.path for n in v.failures]
    assert failed == ["0." + ".".join(map(str, path))]


def _at(d, path):
    for k in path:
        d = d.premises[k]
    return d


def test_tampered_conclusion_is_rejected():
    entry = LIBRARY[0]
    d = entry.derivation
    wrong = strong(d.conclusion.rhs, d.conclusion.rhs)
    v = check_derivation(dataclasses.replace(d, conclusion=wrong), entry.context)
    assert [n.path for n in v.failures] == ["0"]


@pytest.mark.parametrize("entry", LIBRARY, ids=lambda e: e.name)
def test_library_checks_and_weakens(entry):
    assert check_derivation(entry.derivation, entry.context).ok
    if entry.derivation.conclusion.strength is Strength.STRONG:
        w = weaken(entry.derivation, entry.context)
        assert w.conclusion.strength is Strength.WEAK
        assert check_derivation(w, entry.context).ok


def test_empty_map_declared_pure(spec):
    d = derive_decl(EmptyMap(Base("Nat")), Deco.PURE, spec)
    assert d.rule == "d2" and check_derivation(d, spec).ok
