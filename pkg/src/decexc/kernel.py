"""Proof kernel for the decorated logic.

A :class:`Derivation` is a tree of rule instances.  Every node names a rule,
gives an explicit substitution for the rule's metavariables, and states its
conclusion.  Checking is local: a node is accepted when the rule, instantiated
by the substitution, has exactly the children's conclusions as premises and
the stated conclusion as conclusion.  There is no search and no matching
modulo associativity.

Judgments are types (``X``), decorated declarations (``f`` has decoration at
most ``d``) and strong or weak equations.  A bare term premise ``f : X -> Y``
is a declaration at ``ctc``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .syntax import (
    Base, Comp, Copi1, Copi2, Coprod, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap,
    Equation, Gen, Id, Strength, TagCotuple, TermTypeError, Zero, strong, weak,
)


# ---------------------------------------------------------------------------
# Judgments


@dataclass(frozen=True)
class TypeJ:
    ty: object


@dataclass(frozen=True)
class Decl:
    term: object
    deco: Deco


Judgment = Union[TypeJ, Decl, Equation]


# ---------------------------------------------------------------------------
# Errors


class KernelError(Exception):
    pass


class UnknownRule(KernelError):
    pass


class BadSubstitution(KernelError):
    pass


class WrongPremiseCount(KernelError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"expected {expected} premises, got {got}")
        self.expected, self.got = expected, got


class PremiseMismatch(KernelError):
    def __init__(self, position: int, expected, got):
        from .formats import print_judgment
        super().__init__(f"premise {position}: expected {print_judgment(expected)}, "
                         f"got {print_judgment(got)}")
        self.position, self.expected, self.got = position, expected, got


class DecorationSideConditionViolated(KernelError):
    pass


class TypeMismatch(KernelError):
    pass


class LeafError(KernelError):
    pass


# ---------------------------------------------------------------------------
# Rules


@dataclass(frozen=True)
class Rule:
    id: str
    family: str
    meta: tuple  # ((name, kind), ...); kinds: term, type, index, terms, deco, equation
    build: Callable
    summary: str


RULES: dict = {}


def _rule(rid: str, meta: str, summary: str):
    if rid in ("type", "gen", "axiom"):
        family = "leaf"
    else:
        family = "sp" if rid.startswith("sp") else rid[0]
    pairs = tuple(tuple(p.split(":")) for p in meta.split()) if meta else ()

    def deco(fn):
        RULES[rid] = Rule(rid, family, pairs, fn, summary)
        return fn
    return deco


def C(t):
    return Decl(t, Deco.CTC)


def P(t):
    return Decl(t, Deco.PPG)


def U(t):
    return Decl(t, Deco.PURE)


def _comp(g, f):
    if f.tgt != g.src:
        raise TypeMismatch(f"cannot compose: {f.tgt} is not {g.src}")
    return Comp(g, f)


# (a) monadic equational rules, strong equations

@_rule("a1", "f:term g:term", "composition")
def _a1(s, ctx):
    return [C(s["f"]), C(s["g"])], C(_comp(s["g"], s["f"]))


@_rule("a2", "X:type", "identity")
def _a2(s, ctx):
    return [TypeJ(s["X"])], C(Id(s["X"]))


@_rule("a3", "f:term g:term h:term", "associativity")
def _a3(s, ctx):
    f, g, h = s["f"], s["g"], s["h"]
    return [C(f), C(g), C(h)], strong(_comp(h, _comp(g, f)), _comp(_comp(h, g), f))


@_rule("a4", "f:term", "right identity")
def _a4(s, ctx):
    f = s["f"]
    return [C(f)], strong(_comp(f, Id(f.src)), f)


@_rule("a5", "f:term", "left identity")
def _a5(s, ctx):
    f = s["f"]
    return [C(f)], strong(_comp(Id(f.tgt), f), f)


@_rule("a6", "f:term", "strong reflexivity")
def _a6(s, ctx):
    return [C(s["f"])], strong(s["f"], s["f"])


@_rule("a7", "f:term g:term", "strong symmetry")
def _a7(s, ctx):
    return [strong(s["f"], s["g"])], strong(s["g"], s["f"])


@_rule("a8", "f:term g:term h:term", "strong transitivity")
def _a8(s, ctx):
    return [strong(s["f"], s["g"]), strong(s["g"], s["h"])], strong(s["f"], s["h"])


@_rule("a9", "f:term g1:term g2:term", "strong substitution")
def _a9(s, ctx):
    f, g1, g2 = s["f"], s["g1"], s["g2"]
    return [C(f), strong(g1, g2)], strong(_comp(g1, f), _comp(g2, f))


@_rule("a10", "f1:term f2:term g:term", "strong replacement")
def _a10(s, ctx):
    f1, f2, g = s["f1"], s["f2"], s["g"]
    return [strong(f1, f2), C(g)], strong(_comp(g, f1), _comp(g, f2))


# (b) conversions and weak equations

@_rule("b1", "f:term", "pure is propagator")
def _b1(s, ctx):
    return [U(s["f"])], P(s["f"])


@_rule("b2", "f:term", "propagator is catcher")
def _b2(s, ctx):
    return [P(s["f"])], C(s["f"])


@_rule("b3", "X:type", "identity is pure")
def _b3(s, ctx):
    return [TypeJ(s["X"])], U(Id(s["X"]))


@_rule("b4", "f:term g:term", "pure composition")
def _b4(s, ctx):
    return [U(s["f"]), U(s["g"])], U(_comp(s["g"], s["f"]))


@_rule("b5", "f:term g:term", "propagator composition")
def _b5(s, ctx):
    return [P(s["f"]), P(s["g"])], P(_comp(s["g"], s["f"]))


@_rule("b6", "f:term g:term", "weak to strong for propagators")
def _b6(s, ctx):
    f, g = s["f"], s["g"]
    return [weak(f, g), P(f), P(g)], strong(f, g)


@_rule("b7", "f:term g:term", "strong to weak")
def _b7(s, ctx):
    return [strong(s["f"], s["g"])], weak(s["f"], s["g"])


@_rule("b8", "f:term", "weak reflexivity")
def _b8(s, ctx):
    return [C(s["f"])], weak(s["f"], s["f"])


@_rule("b9", "f:term g:term", "weak symmetry")
def _b9(s, ctx):
    return [weak(s["f"], s["g"])], weak(s["g"], s["f"])


@_rule("b10", "f:term g:term h:term", "weak transitivity")
def _b10(s, ctx):
    return [weak(s["f"], s["g"]), weak(s["g"], s["h"])], weak(s["f"], s["h"])


@_rule("b11", "f:term g1:term g2:term", "weak substitution (pure f only)")
def _b11(s, ctx):
    f, g1, g2 = s["f"], s["g1"], s["g2"]
    if f.deco is not Deco.PURE:
        raise DecorationSideConditionViolated(
            f"weak substitution needs a pure term, got a {f.deco} one")
    return [U(f), weak(g1, g2)], weak(_comp(g1, f), _comp(g2, f))


@_rule("b12", "f1:term f2:term g:term", "weak replacement")
def _b12(s, ctx):
    f1, f2, g = s["f1"], s["f2"], s["g"]
    return [weak(f1, f2), C(g)], weak(_comp(g, f1), _comp(g, f2))


# (c) propagation

@_rule("c1", "k:term", "downcast is a propagator")
def _c1(s, ctx):
    return [C(s["k"])], P(Downcast(s["k"]))


@_rule("c2", "k:term", "downcast agrees on ordinary values")
def _c2(s, ctx):
    return [C(s["k"])], weak(Downcast(s["k"]), s["k"])


# (d) decorated initial type

@_rule("d1", "X:type", "empty map")
def _d1(s, ctx):
    return [TypeJ(s["X"])], C(EmptyMap(s["X"]))


@_rule("d2", "X:type", "empty map is pure")
def _d2(s, ctx):
    return [TypeJ(s["X"])], U(EmptyMap(s["X"]))


@_rule("d3", "f:term", "weak initiality of 0")
def _d3(s, ctx):
    f = s["f"]
    if not isinstance(f.src, Zero):
        raise TypeMismatch(f"weak initiality needs a term from 0, not from {f.src}")
    return [C(f)], weak(f, EmptyMap(f.tgt))


# (e) case distinction on X + 0

def _e_check(g, k):
    if not isinstance(k.src, Zero):
        raise TypeMismatch(f"catcher part must start at 0, not {k.src}")
    if g.tgt != k.tgt:
        raise TypeMismatch("cotuple parts have different targets")
    return Cotuple(g, k)


@_rule("e1", "g:term k:term", "case distinction")
def _e1(s, ctx):
    g, k = s["g"], s["k"]
    return [P(g), C(k)], C(_e_check(g, k))


@_rule("e2", "g:term k:term", "case distinction, ordinary part")
def _e2(s, ctx):
    g, k = s["g"], s["k"]
    return [P(g), C(k)], weak(_e_check(g, k), g)


@_rule("e3", "g:term k:term", "case distinction, exceptional part")
def _e3(s, ctx):
    g, k = s["g"], s["k"]
    h = _e_check(g, k)
    return [P(g), C(k)], strong(Comp(h, EmptyMap(g.src)), k)


@_rule("e4", "g:term k:term f:term", "case distinction, uniqueness")
def _e4(s, ctx):
    g, k, f = s["g"], s["k"], s["f"]
    h = _e_check(g, k)
    if f.src != g.src or f.tgt != g.tgt:
        raise TypeMismatch("uniqueness witness is not parallel to the cotuple")
    return ([P(g), C(k), C(f), weak(f, g), strong(_comp(f, EmptyMap(g.src)), k)],
            strong(f, h))


# (f) constitutive coproduct, instantiated with the tags t_i : P_i -> 0

def _family(s, ctx):
    if ctx is None:
        raise BadSubstitution("rule family (f) needs a specification context")
    fs, y = tuple(s["fs"]), s["Y"]
    if len(fs) != len(ctx.indices):
        raise TypeMismatch(f"family has {len(fs)} members, expected one per index "
                           f"({len(ctx.indices)})")
    for i, f in zip(ctx.indices, fs):
        if f.src != ctx.param(i) or f.tgt != y:
            raise TypeMismatch(f"family member for index {i} must be {ctx.param(i)} -> {y}")
    return fs, y, TagCotuple(tuple(zip(ctx.indices, fs)), y)


@_rule("f1", "fs:terms Y:type", "constitutive-tags: cotuple")
def _f1(s, ctx):
    fs, y, h = _family(s, ctx)
    return [P(f) for f in fs], C(h)


@_rule("f2", "fs:terms Y:type i:index", "constitutive-tags: components")
def _f2(s, ctx):
    fs, y, h = _family(s, ctx)
    i = s["i"]
    if i not in ctx.indices:
        raise BadSubstitution(f"unknown index {i}")
    pos = ctx.indices.index(i)
    return [P(f) for f in fs], weak(Comp(h, ctx.tag(i)), fs[pos])


@_rule("f3", "fs:terms Y:type f:term", "constitutive-tags: uniqueness")
def _f3(s, ctx):
    fs, y, h = _family(s, ctx)
    f = s["f"]
    if not isinstance(f.src, Zero) or f.tgt != y:
        raise TypeMismatch(f"uniqueness witness must be 0 -> {y}")
    prem = [P(u) for u in fs] + [C(f)]
    prem += [weak(_comp(f, ctx.tag(i)), u) for i, u in zip(ctx.indices, fs)]
    return prem, strong(f, h)


# (sp) semi-pure coproducts A + B

def _sp_check(f, k):
    if isinstance(f.src, Zero) or isinstance(k.src, Zero):
        raise TypeMismatch("semi-pure coproduct needs nonempty summands")
    if f.tgt != k.tgt:
        raise TypeMismatch("cotuple parts have different targets")
    return Cotuple(f, k)


@_rule("sp0a", "A:type B:type", "first coprojection is pure")
def _sp0a(s, ctx):
    return [TypeJ(s["A"]), TypeJ(s["B"])], U(Copi1(s["A"], s["B"]))


@_rule("sp0b", "A:type B:type", "second coprojection is pure")
def _sp0b(s, ctx):
    return [TypeJ(s["A"]), TypeJ(s["B"])], U(Copi2(s["A"], s["B"]))


@_rule("sp1", "f:term k:term", "semi-pure cotuple")
def _sp1(s, ctx):
    f, k = s["f"], s["k"]
    return [P(f), C(k)], C(_sp_check(f, k))


@_rule("sp2", "f:term k:term", "semi-pure cotuple, first component")
def _sp2(s, ctx):
    f, k = s["f"], s["k"]
    h = _sp_check(f, k)
    return [P(f), C(k)], weak(Comp(h, Copi1(f.src, k.src)), f)


@_rule("sp3", "f:term k:term", "semi-pure cotuple, second component")
def _sp3(s, ctx):
    f, k = s["f"], s["k"]
    h = _sp_check(f, k)
    return [P(f), C(k)], strong(Comp(h, Copi2(f.src, k.src)), k)


@_rule("sp4", "f:term k:term h:term", "semi-pure cotuple, uniqueness")
def _sp4(s, ctx):
    f, k, h = s["f"], s["k"], s["h"]
    cot = _sp_check(f, k)
    if h.src != cot.src or h.tgt != cot.tgt:
        raise TypeMismatch("uniqueness witness is not parallel to the cotuple")
    a, b = f.src, k.src
    return ([P(f), C(k), C(h), weak(Comp(h, Copi1(a, b)), f), strong(Comp(h, Copi2(a, b)), k)],
            strong(h, cot))


def _any_cotuple(f, g):
    if isinstance(g.src, Zero):
        return _e_check(f, g)
    return _sp_check(f, g)


@_rule("sp5", "f:term g:term", "cotuple of propagators is a propagator")
def _sp5(s, ctx):
    f, g = s["f"], s["g"]
    return [P(f), P(g)], P(_any_cotuple(f, g))


@_rule("sp6", "f:term g:term", "cotuple of pure terms is pure")
def _sp6(s, ctx):
    f, g = s["f"], s["g"]
    return [U(f), U(g)], U(_any_cotuple(f, g))


# leaves

def _type_ok(ty, ctx) -> bool:
    if isinstance(ty, Zero):
        return True
    if isinstance(ty, Base):
        return ctx is None or ty in ctx.all_types() or ty.name == "1"
    if isinstance(ty, Coprod):
        return _type_ok(ty.left, ctx) and _type_ok(ty.right, ctx)
    return False


@_rule("type", "X:type", "declared type")
def _type(s, ctx):
    if not _type_ok(s["X"], ctx):
        raise LeafError(f"undeclared type {s['X']}")
    return [], TypeJ(s["X"])


@_rule("gen", "f:term d:deco", "declared generator")
def _gen(s, ctx):
    f, d = s["f"], s["d"]
    if not isinstance(f, Gen):
        raise LeafError("generator leaf on a composite term")
    declared = ctx.generators().get(f.name) if ctx is not None else None
    if declared != f:
        raise LeafError(f"{f.name} is not declared with this signature")
    if d < f.deco:
        raise DecorationSideConditionViolated(f"{f.name} is declared {f.deco}, not {d}")
    return [], Decl(f, d)


@_rule("axiom", "eq:equation", "axiom of the specification")
def _axiom(s, ctx):
    eq = s["eq"]
    if ctx is None or eq not in ctx.axioms:
        from .formats import print_equation
        raise LeafError(f"not an axiom: {print_equation(eq)}")
    return [], eq


LEAF_RULES = ("type", "gen", "axiom")


def rule_families() -> dict:
    out: dict = {}
    for r in RULES.values():
        if r.id in LEAF_RULES:
            continue
        out.setdefault(r.family, []).append(r.id)
    return out


# ---------------------------------------------------------------------------
# Application


def _check_kind(name, kind, value):
    from .syntax import Exc
    ok = {
        "term": lambda v: hasattr(v, "deco") and v.deco is not None,
        "type": lambda v: isinstance(v, (Base, Zero, Coprod)),
        "index": lambda v: isinstance(v, str),
        "terms": lambda v: isinstance(v, (tuple, list)) and all(
            hasattr(u, "deco") and u.deco is not None for u in v),
        "deco": lambda v: isinstance(v, Deco),
        "equation": lambda v: isinstance(v, Equation),
    }[kind]
    if not ok(value):
        raise BadSubstitution(f"metavariable {name} expects a {kind}")


def instantiate(rule_id: str, subst: dict, ctx: Optional[DecoratedSpec] = None):
    """``(premises, conclusion)`` of a rule instance."""
    rule = RULES.get(rule_id)
    if rule is None:
        raise UnknownRule(f"unknown rule {rule_id}")
    names = {n for n, _ in rule.meta}
    missing, extra = names - set(subst), set(subst) - names
    if missing or extra:
        raise BadSubstitution(f"rule {rule_id}: missing {sorted(missing)}, unexpected {sorted(extra)}")
    for n, kind in rule.meta:
        _check_kind(n, kind, subst[n])
    try:
        prem, concl = rule.build(subst, ctx)
    except TermTypeError as e:
        raise TypeMismatch(str(e)) from None
    return list(prem), concl


def apply_rule(rule_id: str, subst: dict, premises: list, ctx: Optional[DecoratedSpec] = None):
    """Check a rule instance against given premise judgments; return its conclusion."""
    expected, concl = instantiate(rule_id, subst, ctx)
    if len(premises) != len(expected):
        raise WrongPremiseCount(len(expected), len(premises))
    for k, (want, got) in enumerate(zip(expected, premises)):
        if want != got:
            if (rule_id == "b11" and k == 0 and isinstance(got, Decl)
                    and got.term == want.term and got.deco > Deco.PURE):
                raise DecorationSideConditionViolated("weak substitution needs a pure term")
            raise PremiseMismatch(k, want, got)
    if isinstance(concl, Decl) and concl.term.deco > concl.deco:
        raise DecorationSideConditionViolated(
            f"conclusion claims {concl.deco} for a {concl.term.deco} term")
    return concl


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Derivation:
    rule: str
    subst: tuple  # ((name, value), ...) in rule order
    conclusion: object
    premises: tuple = ()

    @property
    def substitution(self) -> dict:
        return dict(self.subst)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def nodes(self, path: str = "0"):
        yield path, self
        for k, p in enumerate(self.premises):
            yield from p.nodes(f"{path}.{k}")


def _ordered(rule_id: str, subst: dict) -> tuple:
    rule = RULES.get(rule_id)
    if rule is None:
        return tuple(subst.items())
    order = [n for n, _ in rule.meta]
    return tuple(sorted(subst.items(), key=lambda kv: order.index(kv[0]) if kv[0] in order else 99))


def node(rule_id: str, subst: dict, *premises: Derivation, ctx=None) -> Derivation:
    """Build a node, computing its conclusion with :func:`apply_rule`."""
    concl = apply_rule(rule_id, subst, [p.conclusion for p in premises], ctx)
    return Derivation(rule_id, _ordered(rule_id, subst), concl, tuple(premises))


@dataclass
class NodeReport:
    path: str
    rule: str
    verdict: str
    message: str = ""

    def as_dict(self) -> dict:
        return {"node": self.path, "rule": self.rule, "verdict": self.verdict,
                "message": self.message}


@dataclass
class Verdict:
    ok: bool
    conclusion: object
    nodes: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [n for n in self.nodes if n.verdict != "ok"]

    def first_failure(self) -> Optional[NodeReport]:
        f = self.failures
        return f[0] if f else None


def check_derivation(d: Derivation, ctx: Optional[DecoratedSpec]) -> Verdict:
    """Check every node independently; collect one report per node."""
    reports = []
    for path, n in d.nodes():
        try:
            concl = apply_rule(n.rule, dict(n.subst), [p.conclusion for p in n.premises], ctx)
            if concl != n.conclusion:
                from .formats import print_judgment
                raise KernelError(f"rule yields {print_judgment(concl)}, node states "
                                  f"{print_judgment(n.conclusion)}")
            reports.append(NodeReport(path, n.rule, "ok"))
        except KernelError as e:
            reports.append(NodeReport(path, n.rule, type(e).__name__, str(e)))
    ok = all(r.verdict == "ok" for r in reports)
    return Verdict(ok, d.conclusion, reports)


def equations_of(d: Derivation) -> list:
    """Every equation concluded somewhere in the tree (including axioms)."""
    return [n.conclusion for _, n in d.nodes() if isinstance(n.conclusion, Equation)]


def weaken(d: Derivation, ctx=None) -> Derivation:
    """One (b) step from a strong conclusion to the weak one."""
    eq = d.conclusion
    return node("b7", {"f": eq.lhs, "g": eq.rhs}, d, ctx=ctx)


# ---------------------------------------------------------------------------
# Declaration derivations


def derive_type(ty, ctx) -> Derivation:
    return node("type", {"X": ty}, ctx=ctx)


def derive_decl(t, d: Deco, ctx) -> Derivation:
    """A derivation of ``Decl(t, d)`` for ``d`` at least the stored decoration,
    following the structure of ``t`` and converting upward at the end."""
    if t.deco > d:
        raise DecorationSideConditionViolated(f"{t.deco} term cannot be declared {d}")
    base = _derive_exact(t, ctx)
    level = t.deco
    while level < d:
        base = node("b1" if level is Deco.PURE else "b2", {"f": t}, base, ctx=ctx)
        level = Deco(level + 1)
    return base


def _derive_exact(t, ctx) -> Derivation:
    if isinstance(t, Gen):
        return node("gen", {"f": t, "d": t.deco}, ctx=ctx)
    if isinstance(t, Id):
        return node("b3", {"X": t.at}, derive_type(t.at, ctx), ctx=ctx)
    if isinstance(t, EmptyMap):
        return node("d2", {"X": t.into}, derive_type(t.into, ctx), ctx=ctx)
    if isinstance(t, Comp):
        rule = {Deco.PURE: "b4", Deco.PPG: "b5", Deco.CTC: "a1"}[t.deco]
        return node(rule, {"f": t.inner, "g": t.outer}, derive_decl(t.inner, t.deco, ctx),
                    derive_decl(t.outer, t.deco, ctx), ctx=ctx)
    if isinstance(t, Downcast):
        return node("c1", {"k": t.body}, derive_decl(t.body, Deco.CTC, ctx), ctx=ctx)
    if isinstance(t, Cotuple):
        if t.deco is Deco.CTC:
            rule = "e1" if t.is_case_zero else "sp1"
            return node(rule, {("g" if t.is_case_zero else "f"): t.left, "k": t.right},
                        derive_decl(t.left, Deco.PPG, ctx), derive_decl(t.right, Deco.CTC, ctx),
                        ctx=ctx)
        rule = "sp6" if t.deco is Deco.PURE else "sp5"
        return node(rule, {"f": t.left, "g": t.right}, derive_decl(t.left, t.deco, ctx),
                    derive_decl(t.right, t.deco, ctx), ctx=ctx)
    if isinstance(t, TagCotuple):
        fs = tuple(b for _, b in t.branches)
        return node("f1", {"fs": fs, "Y": t.into},
                    *[derive_decl(b, Deco.PPG, ctx) for b in fs], ctx=ctx)
    if isinstance(t, (Copi1, Copi2)):
        rule = "sp0a" if isinstance(t, Copi1) else "sp0b"
        return node(rule, {"A": t.left, "B": t.right}, derive_type(t.left, ctx),
                    derive_type(t.right, ctx), ctx=ctx)
    raise TypeMismatch(f"no declaration rule for {type(t).__name__}")
