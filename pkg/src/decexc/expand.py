"""The expansion from decorated to explicit terms, equations and specifications.

Every decorated term ``f : X -> Y`` has one canonical explicit image, its
*catcher form* ``X + E -> Y + E``.  The propagator view ``f_1 = f o in_X``
and the pure view ``f_0 : X -> Y`` are derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .syntax import (
    EXC, Case, Comp, Copi1, Copi2, Coprod, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap,
    Equation, Exc, ExplCotuple, Gen, Id, In, Ina, Strength, TagCase, TagCotuple,
    TermTypeError, Zero, comp, expl_cotuple, explicit_eq, ina, inn, plus_e,
)


class UndecoratedNode(TermTypeError):
    pass


class ExplicitNodeOnDecoratedSide(TermTypeError):
    pass


@dataclass(frozen=True)
class ExplicitSpec:
    types: tuple
    ops: tuple
    indices: tuple
    params: tuple
    axioms: tuple

    def generators(self) -> dict:
        return {g.name: g for g in self.ops}

    def param(self, i):
        return dict(self.params)[i]


# ---------------------------------------------------------------------------
# Generators


def explicit_gen(g: Gen) -> Gen:
    """The explicit operation standing for a decorated generator."""
    if g.deco is None:
        raise UndecoratedNode(f"generator {g.name} has no decoration")
    if g.deco is Deco.PURE:
        return Gen(g.name, g.src, g.tgt, None, g.role, g.index)
    if g.deco is Deco.PPG:
        return Gen(g.name, g.src, plus_e(g.tgt), None, g.role, g.index)
    return Gen(g.name, plus_e(g.src), plus_e(g.tgt), None, g.role, g.index)


def explicit_tag(i: str, param) -> Gen:
    return explicit_gen(Gen(f"t{i}", param, Zero(), Deco.PPG, "tag", i))


def explicit_untag(i: str, param) -> Gen:
    return explicit_gen(Gen(f"c{i}", Zero(), param, Deco.CTC, "untag", i))


# ---------------------------------------------------------------------------
# Term expansion


def _check(t):
    if t.deco is None:
        raise ExplicitNodeOnDecoratedSide(f"explicit node {type(t).__name__} on the decorated side")


def catcher_form(t):
    """``X + E -> Y + E`` image of a decorated term."""
    _check(t)
    if isinstance(t, Gen):
        g = explicit_gen(t)
        if t.deco is Deco.PURE:
            return expl_cotuple(comp(inn(t.tgt), g), ina(t.tgt))
        if t.deco is Deco.PPG:
            return expl_cotuple(g, ina(t.tgt))
        return g
    if isinstance(t, Id):
        return Id(plus_e(t.at), explicit=True)
    if isinstance(t, EmptyMap):
        # [ in o [] | ina ] on 0 + E = E
        return ina(t.into)
    if isinstance(t, Comp):
        return Comp(catcher_form(t.outer), catcher_form(t.inner))
    if isinstance(t, Downcast):
        return expl_cotuple(propagator_form(t.body), ina(t.tgt))
    if isinstance(t, Cotuple):
        if t.is_case_zero:
            ordinary = propagator_form(t.left)
            handler = catcher_form(t.right)
        else:
            ordinary = Case(propagator_form(t.left), propagator_form(t.right))
            handler = Comp(catcher_form(t.right), Ina(t.right.src))
        return expl_cotuple(ordinary, handler)
    if isinstance(t, TagCotuple):
        return TagCase(tuple((i, propagator_form(b)) for i, b in t.branches), plus_e(t.into))
    if isinstance(t, (Copi1, Copi2)):
        cls = Copi1 if isinstance(t, Copi1) else Copi2
        return expl_cotuple(Comp(In(t.tgt), cls(t.left, t.right, explicit=True)), Ina(t.tgt))
    raise ExplicitNodeOnDecoratedSide(f"cannot expand {type(t).__name__}")


def propagator_form(t):
    """``f_1 = f o in_X : X -> Y + E`` (not normalized)."""
    return comp(catcher_form(t), inn(t.src))


def pure_form(t):
    """``f_0 : X -> Y`` for a pure decorated term."""
    _check(t)
    if t.deco is not Deco.PURE:
        raise TermTypeError(f"pure view of a {t.deco} term")
    if isinstance(t, Gen):
        return explicit_gen(t)
    if isinstance(t, Id):
        return Id(t.at, explicit=True)
    if isinstance(t, EmptyMap):
        return EmptyMap(t.into, explicit=True)
    if isinstance(t, Comp):
        return Comp(pure_form(t.outer), pure_form(t.inner))
    if isinstance(t, (Copi1, Copi2)):
        return type(t)(t.left, t.right, explicit=True)
    if isinstance(t, Cotuple):
        if t.is_case_zero:
            return pure_form(t.left)
        return Case(pure_form(t.left), pure_form(t.right))
    raise TermTypeError(f"no pure view for {type(t).__name__}")


def expand_term(t):
    """Canonical explicit image: catcher form, ``f_1`` or ``f_0`` by decoration."""
    if t.deco is None:
        raise UndecoratedNode("expand_term expects a decorated term")
    if t.deco is Deco.CTC:
        return catcher_form(t)
    if t.deco is Deco.PPG:
        return normalize(propagator_form(t))
    return pure_form(t)


def expand_equation(eq: Equation, normal: bool = True) -> Equation:
    """Strong: equality of catcher forms. Weak: equality after ``o in_X``."""
    if eq.strength is Strength.EXPLICIT:
        raise TermTypeError("expand_equation expects a decorated equation")
    if eq.strength is Strength.STRONG:
        lhs, rhs = catcher_form(eq.lhs), catcher_form(eq.rhs)
    else:
        lhs, rhs = propagator_form(eq.lhs), propagator_form(eq.rhs)
    if normal:
        lhs, rhs = normalize(lhs), normalize(rhs)
    return explicit_eq(lhs, rhs)


# ---------------------------------------------------------------------------
# Specifications


def explicit_spec(types, pure_ops, indices_params, extra_axioms=()) -> ExplicitSpec:
    """S_expl built directly: tags, untags and the coproduct-style axioms."""
    params = tuple((str(i), p) for i, p in dict(indices_params).items())
    ops = [explicit_gen(g) for g in pure_ops]
    for i, p in params:
        ops += [explicit_tag(i, p), explicit_untag(i, p)]
    axioms = []
    for i, p in params:
        c = explicit_untag(i, p)
        axioms.append(explicit_eq(Comp(c, explicit_tag(i, p)), In(p)))
        for j, q in params:
            if j != i:
                tj = explicit_tag(j, q)
                axioms.append(explicit_eq(Comp(c, tj), Comp(Ina(p), tj)))
    return ExplicitSpec(tuple(types), tuple(ops), tuple(i for i, _ in params), params,
                        tuple(axioms) + tuple(extra_axioms))


def expand_spec(spec: DecoratedSpec) -> ExplicitSpec:
    ops = [explicit_gen(g) for g in spec.ops if g.role is None]
    for i in spec.indices:
        ops += [explicit_gen(spec.tag(i)), explicit_gen(spec.untag(i))]
    axioms = tuple(expand_equation(a) for a in spec.axioms)
    return ExplicitSpec(spec.types, tuple(ops), spec.indices, spec.params, axioms)


# ---------------------------------------------------------------------------
# Normalization


def flatten(t) -> list:
    """Composition chain, outermost first, with no ``Comp`` elements."""
    if isinstance(t, Comp):
        return flatten(t.outer) + flatten(t.inner)
    return [t]


def rebuild(chain: list, src):
    if not chain:
        return Id(src, explicit=True)
    return comp(*chain)


def _beta(outer, inner) -> Optional[object]:
    if isinstance(outer, ExplCotuple):
        if isinstance(inner, In) and inner.at == outer.left.src:
            return outer.left
        if isinstance(inner, Ina):
            return outer.right
    if isinstance(outer, Case):
        if isinstance(inner, Copi1) and inner.explicit:
            return outer.left
        if isinstance(inner, Copi2) and inner.explicit:
            return outer.right
    if isinstance(outer, TagCase) and isinstance(inner, Gen) and inner.role == "tag":
        return outer.branch(inner.index)
    return None


def _normalize_chain(chain: list, src):
    chain = list(chain)
    while True:
        chain = [u for u in chain if not (isinstance(u, Id) and u.explicit)]
        if not chain:
            return Id(src, explicit=True)
        if isinstance(chain[-1].src, Zero):
            tgt = chain[0].tgt
            if len(chain) == 1 and isinstance(chain[0], EmptyMap):
                return chain[0]
            return EmptyMap(tgt, explicit=True)
        for k in range(len(chain) - 1):
            reduced = _beta(chain[k], chain[k + 1])
            if reduced is not None:
                chain[k:k + 2] = flatten(reduced)
                break
        else:
            return rebuild(chain, src)


def _common_prefix(chains: list) -> int:
    k = 0
    shortest = min(len(c) for c in chains)
    while k < shortest and all(c[k] == chains[0][k] for c in chains):
        k += 1
    return k


def _fuse(parts: list, make):
    """Pull a common outer prefix out of the components of a cotuple."""
    chains = [flatten(p) for p in parts]
    # leave every component at least one element, or fusion never stops
    k = min(_common_prefix(chains), min(len(c) for c in chains) - 1)
    if k <= 0:
        return None
    prefix = chains[0][:k]
    mid = prefix[-1].src
    rests = [rebuild(c[k:], mid) for c in chains]
    inner = make(rests)
    return _normalize_chain(prefix + flatten(inner), inner.src)


def _make_expl(parts):
    left, right = parts
    if isinstance(left, In) and isinstance(right, Ina) and left.at == right.at:
        return Id(left.tgt, explicit=True)
    fused = _fuse(parts, _make_expl)
    return fused if fused is not None else expl_cotuple(left, right)


def _make_case(parts):
    left, right = parts
    if (isinstance(left, Copi1) and isinstance(right, Copi2) and left.explicit and right.explicit
            and (left.left, left.right) == (right.left, right.right)):
        return Id(left.tgt, explicit=True)
    fused = _fuse(parts, _make_case)
    return fused if fused is not None else Case(left, right)


def _make_tagcase(indices, into):
    def make(parts):
        if parts and all(isinstance(p, Gen) and p.role == "tag" and p.index == i
                         for i, p in zip(indices, parts)):
            return Id(EXC, explicit=True)
        fused = _fuse(parts, make) if parts else None
        if fused is not None:
            return fused
        return TagCase(tuple(zip(indices, parts)), parts[0].tgt if parts else into)
    return make


def normalize(t):
    """Normal form under the coproduct beta/eta laws, cotuple fusion, identity
    and associativity, and initiality of 0.  Every rewrite step shrinks the term."""
    if t.deco is not None:
        raise TermTypeError("normalize expects an explicit term")
    if isinstance(t, Comp):
        chain = []
        for u in flatten(t):
            chain.extend(flatten(normalize(u)))
        return _normalize_chain(chain, t.src)
    if isinstance(t, ExplCotuple):
        return _make_expl([normalize(t.left), normalize(t.right)])
    if isinstance(t, Case):
        return _make_case([normalize(t.left), normalize(t.right)])
    if isinstance(t, TagCase):
        indices = [i for i, _ in t.branches]
        return _make_tagcase(indices, t.into)([normalize(b) for _, b in t.branches])
    if isinstance(t, EmptyMap):
        return t
    if not isinstance(t.src, Exc) and isinstance(t.src, Zero):
        return EmptyMap(t.tgt, explicit=True)
    return t


def normal_equal(lhs, rhs) -> bool:
    return normalize(lhs) == normalize(rhs)


# ---------------------------------------------------------------------------
# Expanding inference rules
#
# A rule instance with fresh generators for its metavariables becomes an
# explicit obligation: expanded premises entail the expanded conclusion.
# Equations expand as above; a declaration ``t [ppg]`` expands to
# "the catcher form of t propagates", a declaration ``t [pure]`` adds
# "the propagator form of t factors through in".  Discharge first tries
# rewriting with the premises plus the coproduct eta laws on X + E,
# E = sum of the P_i, and A + B; otherwise every model of a fixed battery is
# checked, branching lazily on the table entries that evaluation reads.


@dataclass(frozen=True)
class Obligation:
    premises: tuple          # explicit equations
    conclusion: tuple        # explicit equations, all of which must hold
    indices: tuple


@dataclass
class RuleReport:
    rule: str
    family: str
    ok: bool
    method: str              # "syntactic", "semantic" or "failed"
    obligations: list
    models: int = 0
    leaves: int = 0
    witness: Optional[dict] = None


def _decl_obligation(t, d: Deco) -> list:
    """Explicit equations saying that ``t`` has decoration ``d``."""
    if d is Deco.CTC:
        return []
    cf = catcher_form(t)
    out = [explicit_eq(comp(cf, ina(t.src)), ina(t.tgt))]
    if d is Deco.PURE:
        out.append(explicit_eq(propagator_form(t), comp(inn(t.tgt), pure_form(t))))
    return out


def _judgment_obligation(j) -> list:
    from .kernel import Decl, TypeJ
    if isinstance(j, TypeJ):
        return []
    if isinstance(j, Decl):
        return _decl_obligation(j.term, j.deco)
    return [expand_equation(j, normal=False)]


def rule_obligation(rule_id: str, subst: dict, ctx: DecoratedSpec) -> Obligation:
    from .kernel import instantiate
    prem, concl = instantiate(rule_id, subst, ctx)
    premises = []
    for p in prem:
        premises += _judgment_obligation(p)
    return Obligation(tuple(premises), tuple(_judgment_obligation(concl)), ctx.indices)


# -- syntactic discharge


def _eta_parts(ty, indices_params) -> Optional[list]:
    """Jointly epic injections into ``ty``, or None if ``ty`` has no split."""
    if isinstance(ty, Zero):
        return []
    if isinstance(ty, Exc):
        return [explicit_tag(i, p) for i, p in indices_params]
    if isinstance(ty, Coprod) and isinstance(ty.right, Exc):
        return [inn(ty.left), ina(ty.left)]
    if isinstance(ty, Coprod):
        return [Copi1(ty.left, ty.right, explicit=True), Copi2(ty.left, ty.right, explicit=True)]
    return None


def _rewrite_once(t, rules):
    if isinstance(t, Comp):
        chain = [_rewrite_once(u, rules) for u in flatten(t)]
        for lhs, rhs in rules:
            pat = flatten(lhs)
            for k in range(len(chain) - len(pat) + 1):
                if chain[k:k + len(pat)] == pat:
                    chain[k:k + len(pat)] = flatten(rhs)
                    return rebuild(chain, t.src)
        return rebuild(chain, t.src)
    if isinstance(t, ExplCotuple):
        return ExplCotuple(_rewrite_once(t.left, rules), _rewrite_once(t.right, rules))
    if isinstance(t, Case):
        return Case(_rewrite_once(t.left, rules), _rewrite_once(t.right, rules))
    if isinstance(t, TagCase):
        return TagCase(tuple((i, _rewrite_once(b, rules)) for i, b in t.branches), t.into)
    for lhs, rhs in rules:
        if t == lhs:
            return rhs
    return t


def _nf(t, rules, limit: int = 32):
    t = normalize(t)
    for _ in range(limit):
        u = normalize(_rewrite_once(t, rules))
        if u == t:
            return t
        t = u
    return t


def _split_rules(eqs, ip, depth: int = 2) -> list:
    rules = []
    for eq in eqs:
        lhs, rhs = normalize(eq.lhs), normalize(eq.rhs)
        if lhs != rhs:
            rules.append((lhs, rhs))
        parts = _eta_parts(lhs.src, ip) if depth else None
        if parts:
            rules += _split_rules([explicit_eq(comp(lhs, j), comp(rhs, j)) for j in parts],
                                  ip, depth - 1)
    return rules


def _decide(lhs, rhs, rules, ip, depth: int = 3) -> bool:
    lhs, rhs = _nf(lhs, rules), _nf(rhs, rules)
    if lhs == rhs:
        return True
    parts = _eta_parts(lhs.src, ip) if depth else None
    if parts is None:
        return False
    return all(_decide(comp(lhs, j), comp(rhs, j), rules, ip, depth - 1) for j in parts)


def discharge_syntactic(ob: Obligation, params: dict) -> bool:
    ip = [(i, params[i]) for i in ob.indices]
    rules = _split_rules(ob.premises, ip)
    return all(_decide(c.lhs, c.rhs, rules, ip) for c in ob.conclusion)


# -- semantic discharge


def _gens_of(t, acc: dict):
    if isinstance(t, Gen):
        if t.role is None:
            acc[t.name] = t
        return acc
    for name in ("outer", "inner", "left", "right", "body"):
        sub = getattr(t, name, None)
        if sub is not None and hasattr(sub, "src"):
            _gens_of(sub, acc)
    for _, b in getattr(t, "branches", ()):
        _gens_of(b, acc)
    return acc


def discharge_semantic(ob: Obligation, models, leaf_budget: int = 2_000_000):
    """Check the obligation in every model; returns ``(ok, models, leaves, witness)``."""
    from .handler import _LazyTable, explore
    from .semantics import FiniteModel, compile_term

    gens: dict = {}
    for eq in ob.premises + ob.conclusion:
        _gens_of(eq.lhs, gens)
        _gens_of(eq.rhs, gens)
    n_models = leaves = 0
    for m0 in models:
        n_models += 1
        assignment: dict = {}
        m = FiniteModel(m0.carriers, m0.params, {n: _LazyTable(n, assignment) for n in gens})
        prem = [(compile_term(e.lhs, m), compile_term(e.rhs, m), m.values(e.lhs.src))
                for e in ob.premises]
        concl = [(compile_term(e.lhs, m), compile_term(e.rhs, m), m.values(e.lhs.src))
                 for e in ob.conclusion]
        codomains = {n: m.values(g.tgt) for n, g in gens.items()}

        def run(_):
            for fl, fr, dom in prem:
                for v in dom:
                    if fl(v) != fr(v):
                        return None
            for k, (fl, fr, dom) in enumerate(concl):
                for v in dom:
                    a, b = fl(v), fr(v)
                    if a != b:
                        return (k, v, a, b)
            return True

        bad: list = []

        def on_leaf(results, asg):
            if results[0] not in (None, True) and not bad:
                k, v, a, b = results[0]
                bad.append({"model": m0.describe(), "input": str(v), "lhs": str(a),
                            "rhs": str(b), "tables": {f"{n}({x})": str(y)
                                                      for (n, x), y in asg.items()}})

        leaves += explore([run], None, codomains, assignment, on_leaf)
        if bad:
            return False, n_models, leaves, bad[0]
        if leaves > leaf_budget:
            return False, n_models, leaves, {"budget": leaf_budget}
    return True, n_models, leaves, None


# -- generic instances and the battery

RULE_BATTERY_VERSION = "carriers X,Y,Z in 0..3; I={1} or {1,2}; P_i in {X,Y}"


def _generic_instances(rule_id: str, ctx: DecoratedSpec) -> dict:
    """Fresh generators for every metavariable of a rule."""
    from .syntax import Base
    x, y, z = Base("X"), Base("Y"), Base("Z")
    C, P, U = Deco.CTC, Deco.PPG, Deco.PURE

    def g(name, src, tgt, d):
        return Gen(name, src, tgt, d)

    fam = tuple(g(f"f{i}", ctx.param(i), y, P) for i in ctx.indices)
    z0 = Zero()
    table = {
        "a1": dict(f=g("f", x, y, C), g=g("g", y, z, C)),
        "a2": dict(X=x),
        "a3": dict(f=g("f", x, y, C), g=g("g", y, z, C), h=g("h", z, x, C)),
        "a4": dict(f=g("f", x, y, C)),
        "a5": dict(f=g("f", x, y, C)),
        "a6": dict(f=g("f", x, y, C)),
        "a7": dict(f=g("f", x, y, C), g=g("g", x, y, C)),
        "a8": dict(f=g("f", x, y, C), g=g("g", x, y, C), h=g("h", x, y, C)),
        "a9": dict(f=g("f", x, y, C), g1=g("g1", y, z, C), g2=g("g2", y, z, C)),
        "a10": dict(f1=g("f1", x, y, C), f2=g("f2", x, y, C), g=g("g", y, z, C)),
        "b1": dict(f=g("f", x, y, U)),
        "b2": dict(f=g("f", x, y, P)),
        "b3": dict(X=x),
        "b4": dict(f=g("f", x, y, U), g=g("g", y, z, U)),
        "b5": dict(f=g("f", x, y, P), g=g("g", y, z, P)),
        "b6": dict(f=g("f", x, y, P), g=g("g", x, y, P)),
        "b7": dict(f=g("f", x, y, C), g=g("g", x, y, C)),
        "b8": dict(f=g("f", x, y, C)),
        "b9": dict(f=g("f", x, y, C), g=g("g", x, y, C)),
        "b10": dict(f=g("f", x, y, C), g=g("g", x, y, C), h=g("h", x, y, C)),
        "b11": dict(f=g("f", x, y, U), g1=g("g1", y, z, C), g2=g("g2", y, z, C)),
        "b12": dict(f1=g("f1", x, y, C), f2=g("f2", x, y, C), g=g("g", y, z, C)),
        "c1": dict(k=g("k", x, y, C)),
        "c2": dict(k=g("k", x, y, C)),
        "d1": dict(X=x),
        "d2": dict(X=x),
        "d3": dict(f=g("f", z0, y, C)),
        "e1": dict(g=g("g", x, y, P), k=g("k", z0, y, C)),
        "e2": dict(g=g("g", x, y, P), k=g("k", z0, y, C)),
        "e3": dict(g=g("g", x, y, P), k=g("k", z0, y, C)),
        "e4": dict(g=g("g", x, y, P), k=g("k", z0, y, C), f=g("f", x, y, C)),
        "f1": dict(fs=fam, Y=y),
        "f2": dict(fs=fam, Y=y, i=ctx.indices[0] if ctx.indices else "1"),
        "f3": dict(fs=fam, Y=y, f=g("f", z0, y, C)),
        "sp0a": dict(A=x, B=y),
        "sp0b": dict(A=x, B=y),
        "sp1": dict(f=g("f", x, z, P), k=g("k", y, z, C)),
        "sp2": dict(f=g("f", x, z, P), k=g("k", y, z, C)),
        "sp3": dict(f=g("f", x, z, P), k=g("k", y, z, C)),
        "sp4": dict(f=g("f", x, z, P), k=g("k", y, z, C), h=g("h", Coprod(x, y), z, C)),
        "sp5": dict(f=g("f", x, z, P), g=g("g", y, z, P)),
        "sp6": dict(f=g("f", x, z, U), g=g("g", y, z, U)),
    }
    return table[rule_id]


def _index_configs() -> list:
    from .syntax import Base
    x, y = Base("X"), Base("Y")
    out = [{"1": p} for p in (x, y)]
    out += [{"1": p, "2": q} for p in (x, y) for q in (x, y)]
    return out


def rule_battery(params: dict, max_size: int = 3) -> list:
    from itertools import product
    from .semantics import FiniteModel, atoms_for
    models = []
    for nx, ny, nz in product(range(max_size + 1), repeat=3):
        carriers = {"X": atoms_for("X", nx), "Y": atoms_for("Y", ny), "Z": atoms_for("Z", nz)}
        models.append(FiniteModel(carriers, dict(params), {}))
    return models


def _rule_context(params: dict) -> DecoratedSpec:
    from .syntax import decorated_spec
    return decorated_spec(("X", "Y", "Z"), (), params)


def expand_rule(rule_id: str, *, method: str = "auto", max_size: int = 3) -> RuleReport:
    """Expand a rule and discharge the obligation for every index configuration.

    ``method`` is ``"auto"`` (syntactic, then semantic), ``"syntactic"`` or
    ``"semantic"``.
    """
    from .kernel import RULES
    family = RULES[rule_id].family
    rep = RuleReport(rule_id, family, True, "syntactic", [])
    for params in _index_configs():
        ctx = _rule_context(params)
        ob = rule_obligation(rule_id, _generic_instances(rule_id, ctx), ctx)
        rep.obligations.append(ob)
        if method != "semantic" and discharge_syntactic(ob, params):
            continue
        if method == "syntactic":
            rep.ok, rep.method = False, "failed"
            return rep
        ok, n, leaves, witness = discharge_semantic(ob, rule_battery(params, max_size))
        rep.method = "semantic"
        rep.models += n
        rep.leaves += leaves
        if not ok:
            rep.ok, rep.method, rep.witness = False, "failed", witness
            return rep
    return rep


def expand_all_rules(method: str = "auto") -> list:
    from .kernel import RULES
    return [expand_rule(r, method=method) for r, rule in RULES.items() if rule.family != "leaf"]
