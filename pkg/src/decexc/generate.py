"""Random well-typed terms, specifications and models for property checks."""

from __future__ import annotations

import random
from typing import Optional

from .semantics import FiniteModel, battery, random_table, user_generators
from .syntax import (
    ZERO, Base, Comp, Copi1, Copi2, Coprod, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap,
    Gen, Id, TagCotuple, Zero, decorated_spec, depth as term_depth,
)

A, B = Base("A"), Base("B")


def term_spec(indices=2) -> DecoratedSpec:
    """Two base types, one generator of each decoration and some exception
    names: ``indices`` is a count (parameters ``A``, ``B``, ``A``, ...) or a
    dict of parameter types."""
    ops = (
        Gen("f", A, B, Deco.PURE),
        Gen("g", B, A, Deco.PPG),
        Gen("h", A, A, Deco.CTC),
        Gen("u", B, B, Deco.PURE),
    )
    if isinstance(indices, dict):
        params = dict(indices)
    else:
        params = {str(i + 1): (A, B)[i % 2] for i in range(indices)}
    return decorated_spec(("A", "B"), ops, params)


class TermGen:
    """Random decorated terms over a specification.

    ``term(src, depth)`` returns a term with the given source;
    ``term_to(src, tgt, depth)`` also fixes the target (or returns None).
    """

    def __init__(self, spec: DecoratedSpec, rng: random.Random, coproducts: bool = True):
        self.spec, self.rng, self.coproducts = spec, rng, coproducts
        self.types = [Base(n) for n in spec.types if n != "1"]

    def _leaves(self, src) -> list:
        s = self.spec
        out = [Id(src)]
        out += [g for g in user_generators(s) if g.src == src]
        out += [s.tag(i) for i in s.indices if s.param(i) == src]
        if isinstance(src, Zero):
            out += [EmptyMap(t) for t in self.types]
            out += [s.untag(i) for i in s.indices]
        if self.coproducts and isinstance(src, Base):
            other = self.rng.choice(self.types)
            out += [Copi1(src, other), Copi2(other, src)]
        return out

    def term(self, src, depth: int):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            return rng.choice(self._leaves(src))
        kind = rng.choice(("comp", "comp", "down", "cotuple"))
        if kind == "comp":
            inner = self.term(src, depth - 1)
            return Comp(self.term(inner.tgt, depth - 1), inner)
        if kind == "down":
            body = self.term(src, depth - 1)
            return Downcast(body) if body.deco is Deco.CTC else body
        if isinstance(src, Zero):
            return self.tag_cotuple(rng.choice(self.types), depth - 1) or self.term(src, depth - 1)
        if isinstance(src, Coprod):
            return self.sum_cotuple(src, depth - 1) or self.term(src, depth - 1)
        left = self.propagator(src, depth - 1)
        right = self.term_to(ZERO, left.tgt, depth - 1)
        return Cotuple(left, right)

    def propagator(self, src, depth: int, tgt=None):
        for _ in range(8):
            t = self.term(src, depth) if tgt is None else self.term_to(src, tgt, depth)
            if t is not None and t.deco <= Deco.PPG:
                return t
            if t is not None:
                return Downcast(t)
        return Id(src) if tgt is None or tgt == src else None

    def term_to(self, src, tgt, depth: int):
        for _ in range(8):
            t = self.term(src, depth)
            if t.tgt == tgt:
                return t
        if isinstance(src, Zero):
            return EmptyMap(tgt)
        if src == tgt:
            return Id(src)
        for i in self.spec.indices:
            if self.spec.param(i) == src:
                return Comp(EmptyMap(tgt), self.spec.tag(i))
        return None

    def tag_cotuple(self, into, depth: int) -> Optional[TagCotuple]:
        branches = []
        for i in self.spec.indices:
            b = self.propagator(self.spec.param(i), depth, into)
            if b is None:
                return None
            branches.append((i, b))
        return TagCotuple(tuple(branches), into)

    def sum_cotuple(self, src: Coprod, depth: int) -> Optional[Cotuple]:
        if isinstance(src.left, Zero) or isinstance(src.right, Zero):
            return None
        left = self.propagator(src.left, depth)
        right = self.term_to(src.right, left.tgt, depth)
        return Cotuple(left, right) if right is not None else None


def random_terms(spec: DecoratedSpec, count: int, max_depth: int = 5, seed: int = 0) -> list:
    """``count`` random terms of tree depth at most ``max_depth``."""
    rng = random.Random(seed)
    gen = TermGen(spec, rng)
    types = gen.types + [ZERO]
    out = []
    while len(out) < count:
        t = gen.term(rng.choice(types), rng.randint(0, max_depth))
        if term_depth(t) <= max_depth:
            out.append(t)
    return out


def with_random_tables(spec: DecoratedSpec, m: FiniteModel, rng: random.Random) -> Optional[FiniteModel]:
    tables = {}
    for g in user_generators(spec):
        tab = random_table(m, g, rng)
        if tab is None:
            return None
        tables[g.name] = tab
    return m.with_tables(**tables)


def term_battery(sizes=range(4), index_counts=(1, 2), seed: int = 0) -> list:
    """``(spec, model)`` pairs: battery models (carriers of A and B in
    ``sizes``, every parameter assignment) with seeded random tables for the
    generators of :func:`term_spec`.  Models where some generator has no
    interpretation are skipped."""
    rng = random.Random(seed)
    out = []
    for m in battery(("A", "B"), sizes, index_counts):
        spec = term_spec(dict(m.params))
        m = FiniteModel(m.carriers, dict(m.params), {})
        full = with_random_tables(spec, m, rng)
        if full is not None:
            out.append((spec, full))
    return out


def random_instance(rng: random.Random, max_indices: int = 4):
    """A random ``(types, pure ops, indices/params)`` triple."""
    n_types = rng.randint(1, 3)
    types = [f"T{k}" for k in range(n_types)]
    ops = []
    for k in range(rng.randint(0, 4)):
        src = rng.choice(types + ["1"])
        ops.append(Gen(f"op{k}", Base(src), Base(rng.choice(types)), Deco.PURE))
    n_idx = rng.randint(0, max_indices)
    params = {str(i + 1): Base(rng.choice(types)) for i in range(n_idx)}
    return tuple(types), tuple(ops), params
