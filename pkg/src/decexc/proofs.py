"""Derivations of the standard facts about raising and handling.

Each builder returns a :class:`~decexc.kernel.Derivation` whose nodes are
checked as they are built, so a builder that returns has produced a proof
the kernel accepts.  Equational chains use explicit associativity steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Optional

from .kernel import Derivation, derive_decl, derive_type, node
from .syntax import (
    ZERO, Comp, Copi1, Copi2, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap, Gen, Id,
    plus, strong, weak,
)


class Prover:
    """Small helpers over a fixed specification context."""

    def __init__(self, ctx: DecoratedSpec):
        self.ctx = ctx

    # -- leaves and declarations
    def r(self, rule, subst, *premises) -> Derivation:
        return node(rule, subst, *premises, ctx=self.ctx)

    def typ(self, ty) -> Derivation:
        return derive_type(ty, self.ctx)

    def decl(self, t, d: Deco) -> Derivation:
        return derive_decl(t, d, self.ctx)

    def leaf(self, t, d: Deco) -> Derivation:
        """A hypothesis used directly at decoration ``d``."""
        if isinstance(t, Gen):
            return self.r("gen", {"f": t, "d": d})
        return self.decl(t, d)

    def ctc(self, t) -> Derivation:
        return self.decl(t, Deco.CTC)

    def axiom(self, eq) -> Derivation:
        return self.r("axiom", {"eq": eq})

    # -- strong equations
    def refl(self, t) -> Derivation:
        return self.r("a6", {"f": t}, self.ctc(t))

    def sym(self, d: Derivation) -> Derivation:
        e = d.conclusion
        return self.r("a7", {"f": e.lhs, "g": e.rhs}, d)

    def trans(self, *ds: Derivation) -> Derivation:
        def step(a, b):
            return self.r("a8", {"f": a.conclusion.lhs, "g": a.conclusion.rhs,
                                 "h": b.conclusion.rhs}, a, b)
        return reduce(step, ds)

    def assoc(self, h, g, f) -> Derivation:
        """``h o (g o f) == (h o g) o f``."""
        return self.r("a3", {"f": f, "g": g, "h": h}, self.ctc(f), self.ctc(g), self.ctc(h))

    def unassoc(self, h, g, f) -> Derivation:
        """``(h o g) o f == h o (g o f)``."""
        return self.sym(self.assoc(h, g, f))

    def rid(self, f) -> Derivation:
        return self.r("a4", {"f": f}, self.ctc(f))

    def lid(self, f) -> Derivation:
        return self.r("a5", {"f": f}, self.ctc(f))

    def subst(self, f, d: Derivation) -> Derivation:
        """From ``g1 == g2`` get ``g1 o f == g2 o f``."""
        e = d.conclusion
        return self.r("a9", {"f": f, "g1": e.lhs, "g2": e.rhs}, self.ctc(f), d)

    def repl(self, g, d: Derivation) -> Derivation:
        """From ``f1 == f2`` get ``g o f1 == g o f2``."""
        e = d.conclusion
        return self.r("a10", {"f1": e.lhs, "f2": e.rhs, "g": g}, d, self.ctc(g))

    # -- weak equations
    def weak(self, d: Derivation) -> Derivation:
        e = d.conclusion
        return self.r("b7", {"f": e.lhs, "g": e.rhs}, d)

    def wsym(self, d: Derivation) -> Derivation:
        e = d.conclusion
        return self.r("b9", {"f": e.lhs, "g": e.rhs}, d)

    def wtrans(self, *ds: Derivation) -> Derivation:
        def step(a, b):
            return self.r("b10", {"f": a.conclusion.lhs, "g": a.conclusion.rhs,
                                  "h": b.conclusion.rhs}, a, b)
        return reduce(step, ds)

    def wrepl(self, g, d: Derivation) -> Derivation:
        e = d.conclusion
        return self.r("b12", {"f1": e.lhs, "f2": e.rhs, "g": g}, d, self.ctc(g))

    def wsubst_pure(self, f, d: Derivation) -> Derivation:
        e = d.conclusion
        return self.r("b11", {"f": f, "g1": e.lhs, "g2": e.rhs}, self.decl(f, Deco.PURE), d)

    def strengthen(self, d: Derivation) -> Derivation:
        """Weak to strong between propagators."""
        e = d.conclusion
        return self.r("b6", {"f": e.lhs, "g": e.rhs}, d, self.decl(e.lhs, Deco.PPG),
                      self.decl(e.rhs, Deco.PPG))

    # -- downcast
    def down_weak(self, k) -> Derivation:
        """``down(k) ~ k``."""
        return self.r("c2", {"k": k}, self.ctc(k))

    def down_congr(self, d: Derivation) -> Derivation:
        """From ``k1 == k2`` get ``down(k1) == down(k2)``."""
        e = d.conclusion
        w = self.wtrans(self.down_weak(e.lhs), self.weak(d), self.wsym(self.down_weak(e.rhs)))
        return self.strengthen(w)

    # -- case distinction on X + 0
    def cotuple_right_congr(self, g, d: Derivation) -> Derivation:
        """From ``k1 == k2`` (both ``0 -> Y``) get ``[g | k1] == [g | k2]``."""
        e = d.conclusion
        k1, k2 = e.lhs, e.rhs
        h = Cotuple(g, k1)
        ordinary = self.r("e2", {"g": g, "k": k1}, self.decl(g, Deco.PPG), self.ctc(k1))
        on_zero = self.trans(self.r("e3", {"g": g, "k": k1}, self.decl(g, Deco.PPG),
                                    self.ctc(k1)), d)
        return self.r("e4", {"g": g, "k": k2, "f": h}, self.decl(g, Deco.PPG), self.ctc(k2),
                      self.ctc(h), ordinary, on_zero)

    def empty_zero(self) -> Derivation:
        """``[]_0 == id_0``."""
        w = self.r("d3", {"f": Id(ZERO)}, self.ctc(Id(ZERO)))
        return self.sym(self.strengthen(w))


# ---------------------------------------------------------------------------
# Lemma: g o []_X == []_Y and g == [g | []_Y] for a propagator g


def lemma_coprod_cotu_part1(pv: Prover, g) -> Derivation:
    x, y = g.src, g.tgt
    e_x = EmptyMap(x)
    n1 = pv.r("d1", {"X": x}, pv.typ(x))
    n2 = pv.leaf(g, Deco.CTC)
    n3 = pv.r("a1", {"f": e_x, "g": g}, n1, n2)
    n4 = pv.r("d3", {"f": Comp(g, e_x)}, n3)
    n5 = pv.leaf(g, Deco.PPG)
    n7 = pv.r("b1", {"f": e_x}, pv.r("d2", {"X": x}, pv.typ(x)))
    n8 = pv.r("b5", {"f": e_x, "g": g}, n7, n5)
    n10 = pv.r("b1", {"f": EmptyMap(y)}, pv.r("d2", {"X": y}, pv.typ(y)))
    return pv.r("b6", {"f": Comp(g, e_x), "g": EmptyMap(y)}, n4, n8, n10)


def lemma_coprod_cotu_part2(pv: Prover, g) -> Derivation:
    y = g.tgt
    p1 = pv.leaf(g, Deco.PPG)
    e_y = EmptyMap(y)
    p2 = pv.r("b2", {"f": e_y}, pv.r("b1", {"f": e_y}, pv.r("d2", {"X": y}, pv.typ(y))))
    p3 = pv.r("b2", {"f": g}, pv.leaf(g, Deco.PPG))
    p4 = pv.r("b8", {"f": g}, pv.leaf(g, Deco.CTC))
    p5 = lemma_coprod_cotu_part1(pv, g)
    return pv.r("e4", {"g": g, "k": e_y, "f": g}, p1, p2, p3, p4, p5)


# ---------------------------------------------------------------------------
# Annihilation untag-tag: t_i o c_i == id_0


def _family_uniqueness(pv: Prover, fs, y, h, weak_facts) -> Derivation:
    ctx = pv.ctx
    prem = [pv.decl(f, Deco.PPG) for f in fs] + [pv.ctc(h)] + list(weak_facts)
    return pv.r("f3", {"fs": tuple(fs), "Y": y, "f": h}, *prem)


def _tags_fix(pv: Prover, i: str) -> list:
    """``(t_i o c_i) o t_m ~ t_m`` for every index ``m``."""
    ctx = pv.ctx
    ti, ci = ctx.tag(i), ctx.untag(i)
    pi = ctx.param(i)
    out = []
    for m in ctx.indices:
        tm = ctx.tag(m)
        if m == i:
            s1 = pv.unassoc(ti, ci, ti)
            w2 = pv.wrepl(ti, pv.axiom(weak(Comp(ci, ti), Id(pi))))
            s3 = pv.rid(ti)
            out.append(pv.wtrans(pv.weak(s1), w2, pv.weak(s3)))
        else:
            e_p = EmptyMap(pi)
            s1 = pv.unassoc(ti, ci, tm)
            w2 = pv.wrepl(ti, pv.axiom(weak(Comp(ci, tm), Comp(e_p, tm))))
            s3 = pv.assoc(ti, e_p, tm)
            s4 = pv.subst(tm, lemma_coprod_cotu_part1(pv, ti))
            s5 = pv.subst(tm, pv.empty_zero())
            s6 = pv.lid(tm)
            out.append(pv.wtrans(pv.weak(s1), w2, pv.weak(pv.trans(s3, s4, s5, s6))))
    return out


def untag_tag(pv: Prover, i: str) -> Derivation:
    ctx = pv.ctx
    tags = [ctx.tag(m) for m in ctx.indices]
    h = Comp(ctx.tag(i), ctx.untag(i))
    a = _family_uniqueness(pv, tags, ZERO, h, _tags_fix(pv, i))
    ident = [pv.weak(pv.lid(t)) for t in tags]
    b = _family_uniqueness(pv, tags, ZERO, Id(ZERO), ident)
    return pv.trans(a, pv.sym(b))


# ---------------------------------------------------------------------------
# Annihilation catch-raise: try f catch(i => throw_i) == f


def catch_raise(pv: Prover, f, i: str) -> Derivation:
    from .handler import build_throw, build_try_catch
    ctx = pv.ctx
    y = f.tgt
    ci, ti = ctx.untag(i), ctx.tag(i)
    e_y = EmptyMap(y)
    thr = build_throw(i, y, ctx)
    lhs = build_try_catch(f, [(i, thr)], ctx)
    k = lhs.body.outer.right  # [throw | []_Y] o c_i
    # the short form: [throw | []_Y] == throw
    short = pv.sym(lemma_coprod_cotu_part2(pv, thr))
    k_eq = pv.trans(
        pv.subst(ci, short),                       # k == throw o c_i
        pv.unassoc(e_y, ti, ci),                   # == []_Y o (t_i o c_i)
        pv.repl(e_y, untag_tag(pv, i)),            # == []_Y o id_0
        pv.rid(e_y),                               # == []_Y
    )
    assert k_eq.conclusion.lhs == k
    cot = pv.trans(pv.cotuple_right_congr(Id(y), k_eq),          # [id|k] == [id|[]]
                   pv.sym(lemma_coprod_cotu_part2(pv, Id(y))))   # == id_Y
    body_eq = pv.trans(pv.subst(f, cot), pv.lid(f))               # TRY == f
    down_eq = pv.down_congr(body_eq)                              # down(TRY) == down(f)
    down_f = pv.strengthen(pv.down_weak(f))                       # down(f) == f
    return pv.trans(down_eq, down_f)


# ---------------------------------------------------------------------------
# Commutation untag-untag: (c_i + id) o c_j == (id + c_i) o c_i


def _sum_family(pv: Prover, i: str, j: str) -> list:
    ctx = pv.ctx
    pi, pj = ctx.param(i), ctx.param(j)
    out = []
    for m in ctx.indices:
        if m == i:
            out.append(Copi1(pi, pj))
        elif m == j:
            out.append(Copi2(pi, pj))
        else:
            out.append(Comp(EmptyMap(Copi1(pi, pj).tgt), ctx.tag(m)))
    return out


def _sum_side_fix(pv: Prover, first: str, second: str, i: str, j: str) -> list:
    """For ``s = (sum) o c_second`` with the sum built around ``c_first``,
    prove ``s o t_m ~ family_m`` for every index ``m``.

    The sum is ``[copi_b o id | copi_a o c_first]`` on ``P_second``, where
    ``copi_b`` injects ``P_second`` and ``copi_a`` injects ``P_first``.
    """
    ctx = pv.ctx
    pi, pj = ctx.param(i), ctx.param(j)
    inj = {i: Copi1(pi, pj), j: Copi2(pi, pj)}
    ps, cs, cf = ctx.param(second), ctx.untag(second), ctx.untag(first)
    total = inj[i].tgt
    left = Comp(inj[second], Id(ps))
    right = Comp(inj[first], cf)
    s = Cotuple(left, right)
    out = []
    for m in ctx.indices:
        tm = ctx.tag(m)
        if m == second:
            steps = pv.wtrans(
                pv.weak(pv.unassoc(s, cs, tm)),
                pv.wrepl(s, pv.axiom(weak(Comp(cs, tm), Id(ps)))),
                pv.weak(pv.rid(s)),
                pv.r("e2", {"g": left, "k": right}, pv.decl(left, Deco.PPG), pv.ctc(right)),
                pv.weak(pv.rid(inj[second])),
            )
            out.append(steps)
            continue
        e_s = EmptyMap(ps)
        head = [
            pv.weak(pv.unassoc(s, cs, tm)),
            pv.wrepl(s, pv.axiom(weak(Comp(cs, tm), Comp(e_s, tm)))),
        ]
        on_zero = pv.r("e3", {"g": left, "k": right}, pv.decl(left, Deco.PPG), pv.ctc(right))
        mid = pv.trans(pv.assoc(s, e_s, tm), pv.subst(tm, on_zero),
                       pv.unassoc(inj[first], cf, tm))     # == copi_a o (c_first o t_m)
        if m == first:
            tail = [
                pv.wrepl(inj[first], pv.axiom(weak(Comp(cf, tm), Id(ctx.param(first))))),
                pv.weak(pv.rid(inj[first])),
            ]
        else:
            e_f = EmptyMap(ctx.param(first))
            tail = [
                pv.wrepl(inj[first], pv.axiom(weak(Comp(cf, tm), Comp(e_f, tm)))),
                pv.weak(pv.trans(pv.assoc(inj[first], e_f, tm),
                                 pv.subst(tm, lemma_coprod_cotu_part1(pv, inj[first])))),
            ]
        out.append(pv.wtrans(*head, pv.weak(mid), *tail))
        assert out[-1].conclusion.rhs == (inj[m] if m in inj else Comp(EmptyMap(total), tm))
    return out


def sum_left(ctx: DecoratedSpec, i: str, j: str):
    """``(c_i + id_{P_j}) o c_j``."""
    return Comp(plus(ctx.untag(i), Id(ctx.param(j))), ctx.untag(j))


def sum_right(ctx: DecoratedSpec, i: str, j: str):
    """``(id_{P_i} + c_j) o c_i``."""
    return Comp(plus(Id(ctx.param(i)), ctx.untag(j)), ctx.untag(i))


def untag_untag(pv: Prover, i: str, j: str) -> Derivation:
    ctx = pv.ctx
    pi, pj = ctx.param(i), ctx.param(j)
    fam = _sum_family(pv, i, j)
    total = Copi1(pi, pj).tgt
    lhs, rhs = sum_left(ctx, i, j), sum_right(ctx, i, j)
    a = _family_uniqueness(pv, fam, total, lhs, _sum_side_fix(pv, i, j, i, j))
    b = _family_uniqueness(pv, fam, total, rhs, _sum_side_fix(pv, j, i, i, j))
    return pv.trans(a, pv.sym(b))


# ---------------------------------------------------------------------------
# Commutation catch-catch


def _split_cotuple(pv: Prover, g, h, first: str, second: str, swapped: bool) -> Derivation:
    """``[g | h] o S == [g | h o c_second]`` or, with ``swapped``,
    ``[g | h] o S == [h | g o c_first]``; here ``[g | h]`` is the semi-pure
    coproduct on ``P_i + P_j`` and ``S`` is the matching sum of untags."""
    ctx = pv.ctx
    a, b = g.src, h.src
    c1, c2 = Copi1(a, b), Copi2(a, b)
    gh = Cotuple(g, h)
    sp2 = pv.r("sp2", {"f": g, "k": h}, pv.decl(g, Deco.PPG), pv.ctc(h))
    sp3 = pv.r("sp3", {"f": g, "k": h}, pv.decl(g, Deco.PPG), pv.ctc(h))
    if not swapped:
        # S = id_{P_i} + c_j = [copi1 o id | copi2 o c_j] on P_i
        cj = ctx.untag(second)
        left, right = Comp(c1, Id(a)), Comp(c2, cj)
        s = Cotuple(left, right)
        target_g, target_k = g, Comp(h, cj)
        near, far, far_untag, near_eq = c1, c2, cj, sp2
    else:
        # S = c_i + id_{P_j} = [copi2 o id | copi1 o c_i] on P_j
        ci = ctx.untag(first)
        left, right = Comp(c2, Id(b)), Comp(c1, ci)
        s = Cotuple(left, right)
        target_g, target_k = h, Comp(g, ci)
        near, far, far_untag = c2, c1, ci
        near_eq = pv.weak(sp3)
    lhs = Comp(gh, s)
    ordinary = pv.wtrans(
        pv.wrepl(gh, pv.r("e2", {"g": left, "k": right}, pv.decl(left, Deco.PPG),
                          pv.ctc(right))),
        pv.weak(pv.assoc(gh, near, Id(left.src))),
        pv.weak(pv.rid(Comp(gh, near))),
        near_eq,
    )
    if not swapped:
        far_eq = sp3
    else:
        far_eq = pv.strengthen(sp2)
    on_zero = pv.trans(
        pv.unassoc(gh, s, EmptyMap(left.src)),
        pv.repl(gh, pv.r("e3", {"g": left, "k": right}, pv.decl(left, Deco.PPG),
                         pv.ctc(right))),
        pv.assoc(gh, far, far_untag),
        pv.subst(far_untag, far_eq),
    )
    return pv.r("e4", {"g": target_g, "k": target_k, "f": lhs}, pv.decl(target_g, Deco.PPG),
                pv.ctc(target_k), pv.ctc(lhs), ordinary, on_zero)


def catch_catch(pv: Prover, f, g, h, i: str, j: str) -> Derivation:
    from .handler import build_try_catch
    ctx = pv.ctx
    y = f.tgt
    ci, cj = ctx.untag(i), ctx.untag(j)
    e_y = EmptyMap(y)
    lhs = build_try_catch(f, [(i, g), (j, h)], ctx)
    rhs = build_try_catch(f, [(j, h), (i, g)], ctx)
    gh = Cotuple(g, h)
    # [h | []] o c_j == h o c_j, inside the first clause
    inner_ij = pv.subst(cj, pv.sym(lemma_coprod_cotu_part2(pv, h)))
    inner_ji = pv.subst(ci, pv.sym(lemma_coprod_cotu_part2(pv, g)))
    k_ij_short = pv.subst(ci, pv.cotuple_right_congr(g, inner_ij))  # k_ij == [g|h o c_j] o c_i
    k_ji_short = pv.subst(cj, pv.cotuple_right_congr(h, inner_ji))  # k_ji == [h|g o c_i] o c_j
    split_i = _split_cotuple(pv, g, h, i, j, swapped=False)   # [g|h] o (id + c_j) == [g|h o c_j]
    split_j = _split_cotuple(pv, g, h, i, j, swapped=True)    # [g|h] o (c_i + id) == [h|g o c_i]
    s_i = split_i.conclusion.lhs.inner
    s_j = split_j.conclusion.lhs.inner
    key = pv.trans(
        pv.subst(ci, pv.sym(split_i)),                 # [g|h o c_j] o c_i == ([g|h] o S_i) o c_i
        pv.unassoc(gh, s_i, ci),                       # == [g|h] o (S_i o c_i)
        pv.repl(gh, pv.sym(untag_untag(pv, i, j))),    # == [g|h] o (S_j o c_j)
        pv.assoc(gh, s_j, cj),                         # == ([g|h] o S_j) o c_j
        pv.subst(cj, split_j),                         # == [h|g o c_i] o c_j
    )
    k_eq = pv.trans(k_ij_short, key, pv.sym(k_ji_short))
    try_eq = pv.subst(f, pv.cotuple_right_congr(Id(y), k_eq))
    out = pv.down_congr(try_eq)
    assert out.conclusion.lhs == lhs and out.conclusion.rhs == rhs
    return out


# ---------------------------------------------------------------------------
# Smaller facts


def ppg_cotuple_downcast(pv: Prover, f, g) -> Derivation:
    """``down([f | g]) == [f | g]`` for propagators ``f`` and ``g``."""
    return pv.strengthen(pv.down_weak(Cotuple(f, g)))


def pure_try(pv: Prover, f, i: str, g) -> Derivation:
    """``try f catch(i => g) == f`` when ``f`` is pure."""
    from .handler import build_try_catch
    y = f.tgt
    t = build_try_catch(f, [(i, g)], pv.ctx)
    cot = t.body.outer
    k = cot.right
    ordinary = pv.r("e2", {"g": Id(y), "k": k}, pv.decl(Id(y), Deco.PPG), pv.ctc(k))
    body = pv.wtrans(pv.wsubst_pure(f, ordinary), pv.weak(pv.lid(f)))   # TRY ~ f
    return pv.strengthen(pv.wtrans(pv.down_weak(t.body), body))


def try_short_form(pv: Prover, f, i: str, g) -> Derivation:
    """``try f catch(i => g) == down([id_Y | g o c_i] o f)``."""
    from .handler import build_try_catch
    ci = pv.ctx.untag(i)
    y = f.tgt
    t = build_try_catch(f, [(i, g)], pv.ctx)
    k_eq = pv.subst(ci, pv.sym(lemma_coprod_cotu_part2(pv, g)))
    return pv.down_congr(pv.subst(f, pv.cotuple_right_congr(Id(y), k_eq)))


# ---------------------------------------------------------------------------
# Library


@dataclass(frozen=True)
class LibraryEntry:
    name: str
    statement: str
    context: DecoratedSpec
    assumptions: tuple
    derivation: Derivation
    family_f: bool = False


def shipped_spec() -> DecoratedSpec:
    from .data import load_spec
    return load_spec("exceptions.dexc")


def _hyp(name, src, tgt, d=Deco.PPG):
    from .syntax import Base
    conv = (lambda t: t if not isinstance(t, str) else Base(t))
    return Gen(name, conv(src), conv(tgt), d)


def build_library(spec: Optional[DecoratedSpec] = None) -> list:
    """Every library derivation over the shipped specification (indices 1
    and 2), in a fixed order."""
    spec = spec or shipped_spec()
    i, j = spec.indices[0], spec.indices[1]
    pi, pj = spec.param(i), spec.param(j)
    entries = []

    def add(name, statement, hyps, build, family_f=False):
        ctx = spec.with_ops(*hyps) if hyps else spec
        pv = Prover(ctx)
        entries.append(LibraryEntry(name, statement, ctx, tuple(hyps), build(pv, ctx), family_f))

    g_xy = _hyp("g", "X", "Y")
    add("lemma_coprod_cotu_part1", "g o []_X == []_Y", [g_xy],
        lambda pv, c: lemma_coprod_cotu_part1(pv, g_xy))
    add("lemma_coprod_cotu_part2", "g == [g | []_Y]", [g_xy],
        lambda pv, c: lemma_coprod_cotu_part2(pv, g_xy))
    add("lemma_untag_tag", f"t{i} o c{i} == id_0", [],
        lambda pv, c: untag_tag(pv, i), family_f=True)
    f_xy = _hyp("f", "X", "Y")
    add("lemma_catch_raise", f"try f catch({i} => throw) == f", [f_xy],
        lambda pv, c: catch_raise(pv, f_xy, i))
    add("lemma_untag_untag", f"(c{i} + id) o c{j} == (id + c{j}) o c{i}", [],
        lambda pv, c: untag_untag(pv, i, j), family_f=True)
    g_i, h_j = Gen("g", pi, g_xy.tgt, Deco.PPG), Gen("h", pj, g_xy.tgt, Deco.PPG)
    add("prop_catch_catch", f"try f catch({i} => g | {j} => h) == try f catch({j} => h | {i} => g)",
        [f_xy, g_i, h_j], lambda pv, c: catch_catch(pv, f_xy, g_i, h_j, i, j))
    a_ = _hyp("f", pi, "Y")
    b_ = _hyp("g", pj, "Y")
    add("ppg_cotuple_downcast", "down([f | g]) == [f | g]", [a_, b_],
        lambda pv, c: ppg_cotuple_downcast(pv, a_, b_))
    fp = _hyp("f", "X", "Y", Deco.PURE)
    g_h = Gen("g", pi, g_xy.tgt, Deco.PPG)
    add("pure_try", f"try f catch({i} => g) == f for pure f", [fp, g_h],
        lambda pv, c: pure_try(pv, fp, i, g_h))
    add("try_short_form", f"try f catch({i} => g) == down([id | g o c{i}] o f)", [f_xy, g_h],
        lambda pv, c: try_short_form(pv, f_xy, i, g_h))
    return entries


def render(entry: LibraryEntry, spec_name: str = "exceptions.dexc") -> str:
    """The ``.dproof`` text of a library entry."""
    from .formats import print_derivation
    header = f"# {entry.statement}\n"
    return header + print_derivation(entry.derivation, spec_name=spec_name,
                                     assumptions=entry.assumptions)


def write_scripts(directory, spec: Optional[DecoratedSpec] = None) -> list:
    """Regenerate the shipped proof scripts; returns the written paths."""
    from pathlib import Path
    out = []
    for e in build_library(spec):
        path = Path(directory) / f"{e.name}.dproof"
        path.write_text(render(e))
        out.append(path)
    return out


@dataclass(frozen=True)
class CheckedScript:
    name: str
    proof: object       # formats.ProofFile
    verdict: object     # kernel.Verdict


def load_script(name: str):
    from .data import load_spec, read_text
    from .formats import parse_proof
    return parse_proof(read_text("proofs", name), load_spec=load_spec)


def derived_rule_library() -> dict:
    """Every shipped proof script, parsed and checked, keyed by name."""
    from .data import proof_names
    from .kernel import check_derivation
    out = {}
    for fname in proof_names():
        pf = load_script(fname)
        name = fname[:-len(".dproof")]
        out[name] = CheckedScript(name, pf, check_derivation(pf.derivation, pf.context))
    return out
