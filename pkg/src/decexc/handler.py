"""Raising and handling built from tags and untags, plus a Java-style reference.

``build_try_catch`` follows the recursive definition literally: the last
continuation is the empty map (``ina`` on the explicit side) and each clause
wraps the previous one as ``[g_p | k_{p+1}] o c_{i_p}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .syntax import (
    Base, Comp, Cotuple, Deco, Downcast, EmptyMap, Gen, Id, TagCotuple, TermTypeError, Zero,
    comp, expl_cotuple, ina, inn, plus_e,
)


class UnknownIndex(KeyError):
    pass


class EmptyClauseList(ValueError):
    pass


class DecorationTooHigh(TermTypeError):
    pass


class HandlerTypeMismatch(TermTypeError):
    pass


def _param(spec, i: str):
    i = str(i)
    if i not in tuple(spec.indices):
        raise UnknownIndex(f"unknown exception index {i}")
    return spec.param(i)


def _tag(spec, i, explicit):
    p = _param(spec, i)
    if explicit:
        from .expand import explicit_tag
        return explicit_tag(str(i), p)
    return spec.tag(str(i))


def _untag(spec, i, explicit):
    p = _param(spec, i)
    if explicit:
        from .expand import explicit_untag
        return explicit_untag(str(i), p)
    return spec.untag(str(i))


def build_throw(i, y, spec, explicit: bool = False):
    """``[]_Y o t_i`` (decorated) or ``ina_Y o t_i`` (explicit)."""
    t = _tag(spec, i, explicit)
    if explicit:
        return comp(ina(y), t)
    return Comp(EmptyMap(y), t)


def _check_clauses(f, clauses, spec, explicit):
    clauses = [(str(i), g) for i, g in clauses]
    if not clauses:
        raise EmptyClauseList("try/catch needs at least one catch clause")
    y = f.tgt
    if explicit:
        if f.deco is not None:
            raise HandlerTypeMismatch("explicit try/catch of a decorated term")
        for i, g in clauses:
            if g.src != _param(spec, i) or g.tgt != y:
                raise HandlerTypeMismatch(f"clause {i}: expected {_param(spec, i)} -> {y}")
        return clauses
    if f.deco is None:
        raise HandlerTypeMismatch("decorated try/catch of an explicit term")
    if f.deco > Deco.PPG:
        raise DecorationTooHigh("the tried term must be a propagator")
    for i, g in clauses:
        if g.deco is None or g.deco > Deco.PPG:
            raise DecorationTooHigh(f"clause {i}: handler bodies must be propagators")
        if g.src != _param(spec, i) or g.tgt != y:
            raise HandlerTypeMismatch(f"clause {i}: expected {_param(spec, i)} -> {y}, "
                                      f"got {g.src} -> {g.tgt}")
    return clauses


def build_catch(clauses, y, spec, explicit: bool = False, short: bool = False):
    """The continuation ``k_1`` (``0 -> Y`` catcher, or ``E -> Y + E``).

    With ``short=True`` the innermost clause is ``g_n o c_{i_n}`` instead of
    ``[g_n | []_Y] o c_{i_n}``; the two are strongly equal.
    """
    clauses = list(clauses)
    if not clauses:
        raise EmptyClauseList("catch needs at least one clause")
    k = ina(y) if explicit else EmptyMap(y)
    for p, (i, g) in enumerate(reversed(clauses)):
        c = _untag(spec, i, explicit)
        if short and p == 0:
            k = comp(expl_cotuple(g, k), c) if explicit else Comp(g, c)
        elif explicit:
            k = comp(expl_cotuple(g, k), c)
        else:
            k = Comp(Cotuple(g, k), c)
    return k


def build_TRY(f, clauses, spec, explicit: bool = False, short: bool = False):
    """The catcher ``[id_Y | k] o f`` (decorated) or ``[in_Y | k] o f`` (explicit)."""
    clauses = _check_clauses(f, clauses, spec, explicit)
    if explicit:
        y = _strip_e(f.tgt)
        k = build_catch(clauses, y, spec, explicit=True, short=short)
        return comp(expl_cotuple(inn(y), k), f)
    k = build_catch(clauses, f.tgt, spec, short=short)
    return Comp(Cotuple(Id(f.tgt), k), f)


def build_try_catch(f, clauses, spec, explicit: bool = False, short: bool = False):
    """Handling: ``down(TRY f k)`` on the decorated side, ``[in_Y | k] o f`` explicitly."""
    if explicit:
        return build_TRY(f, clauses, spec, explicit=True, short=short)
    return Downcast(build_TRY(f, clauses, spec, short=short))


def _strip_e(ty):
    from .syntax import Coprod, Exc
    if isinstance(ty, Exc):
        return Zero()
    if isinstance(ty, Coprod) and isinstance(ty.right, Exc):
        return ty.left
    raise HandlerTypeMismatch(f"explicit tried term must land in Y + E, not {ty}")


# ---------------------------------------------------------------------------
# Java-style reference


def java_reference_eval(f_sem: Callable, clauses_sem: Sequence, x):
    """Operational try/catch: run ``f``; on a throw of index ``j`` the leftmost
    clause for ``j`` runs on the parameter; with no matching clause the
    exception escapes unchanged.

    ``clauses_sem`` is a list of ``(index, body)`` where ``body`` maps a
    parameter atom to a value.
    """
    from .semantics import Exceptional
    r = f_sem(x)
    if not isinstance(r, Exceptional):
        return r
    for i, body in clauses_sem:
        if str(i) == r.index:
            return body(r.atom)
    return r


# ---------------------------------------------------------------------------
# Differential test


@dataclass
class DifferentialReport:
    ok: bool
    cases: int = 0
    inputs: int = 0
    models: int = 0
    covered: int = 0
    expected_coverage: int = 0
    divergence: Optional[dict] = None

    def __str__(self) -> str:
        if self.ok:
            return (f"pass: {self.models} models, {self.inputs} inputs, {self.cases} leaves "
                    f"covering {self.covered} table assignments, 0 divergences")
        d = self.divergence
        return (f"fail: {d['handler']} on {d['input']} in {d['model']}: "
                f"{d['side']} gave {d['got']}, reference {d['expected']}")


def clause_lists(indices, n_max: int = 3) -> list:
    out = []
    for n in range(1, n_max + 1):
        out.extend(itertools.product(indices, repeat=n))
    return out


def _build_corrupt(f, clauses, spec, explicit):
    """Negative control: ``k_{n+1}`` replaced by the last handler, routed
    through the tags so the term still type-checks."""
    clauses = _check_clauses(f, clauses, spec, explicit)
    y = f.tgt if not explicit else _strip_e(f.tgt)
    i_n, g_n = clauses[-1]
    p_n = spec.param(i_n)
    if explicit:
        from .syntax import TagCase
        from .expand import explicit_tag
        k = TagCase(tuple((j, g_n) for j in spec.indices if spec.param(j) == p_n)
                    + tuple((j, comp(ina(y), explicit_tag(j, spec.param(j))))
                            for j in spec.indices if spec.param(j) != p_n), plus_e(y))
    else:
        k = TagCotuple(tuple((j, g_n if spec.param(j) == p_n else build_throw(j, y, spec))
                             for j in spec.indices), y)
    for i, g in reversed(clauses):
        c = _untag(spec, i, explicit)
        k = comp(expl_cotuple(g, k), c) if explicit else Comp(Cotuple(g, k), c)
    if explicit:
        return comp(expl_cotuple(inn(y), k), f)
    return Downcast(Comp(Cotuple(Id(y), k), f))


class _NeedEntry(Exception):
    def __init__(self, name, key):
        self.name, self.key = name, key


class _LazyTable:
    """A table whose entries come from a partial assignment; reading a
    missing entry asks the explorer to branch on it."""

    __slots__ = ("name", "assignment")

    def __init__(self, name, assignment):
        self.name, self.assignment = name, assignment

    def __getitem__(self, key):
        try:
            return self.assignment[(self.name, key)]
        except KeyError:
            raise _NeedEntry(self.name, key) from None

    def __contains__(self, key):
        return True


def explore(runs, x, codomains: dict, assignment: dict, on_leaf) -> int:
    """Depth-first search over the table entries read while evaluating every
    function in ``runs`` at ``x``.  Any total assignment of the tables agrees
    with exactly one leaf, so checking all leaves checks all tables.
    Returns the number of leaves."""
    try:
        results = [run(x) for run in runs]
    except _NeedEntry as need:
        leaves = 0
        for out in codomains[need.name]:
            assignment[(need.name, need.key)] = out
            leaves += explore(runs, x, codomains, assignment, on_leaf)
        assignment.pop((need.name, need.key), None)
        return leaves
    on_leaf(results, assignment)
    return 1


def differential_handler_test(models: Iterable, n_max: int = 3, corrupt: bool = False
                              ) -> DifferentialReport:
    """Compare both handler constructions against the reference on every
    input, for every tried map ``f : X -> Y + E``, every clause list of
    length ``<= n_max`` (duplicates included) and every choice of handler
    bodies ``P_i -> Y + E``.

    Tables are enumerated lazily (see :func:`explore`), which keeps the
    search exhaustive without materializing the full product of tables.
    ``cases`` counts decision-tree leaves; ``covered`` counts the
    (tables, input) pairs they stand for.
    """
    from .expand import explicit_gen
    from .semantics import FiniteModel, compile_term
    from .syntax import decorated_spec

    rep = DifferentialReport(True)
    build = _build_corrupt if corrupt else build_try_catch
    y, x_ty = Base("Y"), Base("X")
    for m0 in models:
        rep.models += 1
        params = dict(m0.params)
        f = Gen("f", x_ty, y, Deco.PPG)
        spec = decorated_spec(sorted(m0.carriers), (f,), params)
        outs = m0.values(plus_e(y))
        for idx in clause_lists(tuple(params), n_max):
            gens = [Gen(f"g{p}_{i}", params[i], y, Deco.PPG) for p, i in enumerate(idx)]
            clauses = list(zip(idx, gens))
            deco_term = build(f, clauses, spec, False)
            expl_term = build(explicit_gen(f), [(i, explicit_gen(g)) for i, g in clauses],
                              spec, True)
            assignment: dict = {}
            names = ["f"] + [g.name for g in gens]
            m = FiniteModel(m0.carriers, params, {n: _LazyTable(n, assignment) for n in names})
            runs = [compile_term(deco_term, m), compile_term(expl_term, m)]
            codomains = {n: outs for n in names}
            bodies = {g.name: i for g, i in zip(gens, idx)}

            def reference(x):
                r = assignment[("f", x)]
                return java_reference_eval(
                    lambda v: r,
                    [(i, (lambda a, n=g.name: m.tables[n][_ord(a)])) for i, g in clauses], x)

            runs.append(reference)
            total_tables = len(outs) ** (len(m0.values(x_ty))
                                         + sum(len(m0.values(params[i])) for i in idx))

            def check(results, asg):
                got_d, got_e, expected = results
                rep.cases += 1
                rep.covered += total_tables // len(outs) ** len(asg)
                for side, got in (("decorated", got_d), ("explicit", got_e)):
                    if got != expected and rep.ok:
                        rep.ok = False
                        rep.divergence = {
                            "handler": "catch(" + ", ".join(idx) + ")", "input": str(cur[0]),
                            "model": m0.describe(), "side": side, "got": str(got),
                            "expected": str(expected),
                            "tables": {f"{n}({k})": str(v) for (n, k), v in asg.items()},
                        }

            for x in m0.values(x_ty):
                cur = [x]
                rep.inputs += 1
                explore(runs, x, codomains, assignment, check)
                if not rep.ok:
                    return rep
            rep.expected_coverage += total_tables * len(m0.values(x_ty))
    return rep


def _ord(a):
    from .semantics import Ordinary
    return Ordinary(a)


def handler_battery(max_size: int = 2) -> list:
    """Models for the differential test: types ``X`` (source of the tried
    map), ``Y`` (result) and ``A``; two indices whose parameter types are
    ``A`` or ``Y``; every carrier size up to ``max_size``."""
    from .semantics import FiniteModel, atoms_for
    models = []
    sizes = range(0, max_size + 1)
    for nx, ny, na in itertools.product(sizes, repeat=3):
        carriers = {"A": atoms_for("A", na), "X": atoms_for("X", nx), "Y": atoms_for("Y", ny)}
        for p1, p2 in itertools.product(("A", "Y"), repeat=2):
            models.append(FiniteModel(carriers, {"1": Base(p1), "2": Base(p2)}, {}))
    return models
