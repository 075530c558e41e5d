"""Finite set-theoretic models, evaluation on both sides, and the equation oracle.

Values of ``X + E`` are either :class:`Ordinary` (an atom of ``X``) or
:class:`Exceptional` (an index with a parameter atom).  The injections ``in``
and ``ina`` act as the identity on this representation, which is what makes
exceptional values shared by every ``X + E``.  Atoms of a formal coproduct
``A + B`` are pairs ``("L", a)`` or ``("R", b)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .syntax import (
    Base, Case, Comp, Copi1, Copi2, Coprod, Cotuple, Deco, DecoratedSpec, Downcast, EmptyMap,
    Equation, Exc, ExplCotuple, Gen, Id, In, Ina, Strength, TagCase, TagCotuple, Zero, plus_e,
)

UNIT_ATOM = "*"


@dataclass(frozen=True)
class Ordinary:
    atom: object

    def __str__(self) -> str:
        return _atom_str(self.atom)


@dataclass(frozen=True)
class Exceptional:
    index: str
    atom: object

    def __str__(self) -> str:
        return f"throws {self.index}({_atom_str(self.atom)})"


def _atom_str(a) -> str:
    if isinstance(a, tuple):
        side, inner = a
        return f"{'inl' if side == 'L' else 'inr'}({_atom_str(inner)})"
    return str(a)


class ValueOutsideCarrier(ValueError):
    pass


@dataclass(frozen=True)
class FiniteModel:
    """Carriers for base types, parameter types for the indices, and tables.

    ``tables`` maps a generator name to a dict from input values to output
    values: ordinary inputs for pure and propagator generators, all of
    ``X + E`` for catchers.  Tags and untags need no table; an entry for one
    of them overrides the intended interpretation on the decorated side only.
    """

    carriers: dict
    params: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)

    def __hash__(self):
        return id(self)

    @property
    def indices(self) -> tuple:
        return tuple(self.params)

    def atoms(self, ty) -> list:
        if isinstance(ty, Base):
            if ty.name == "1":
                return [UNIT_ATOM]
            if ty.name not in self.carriers:
                raise ValueOutsideCarrier(f"no carrier for type {ty.name}")
            return list(self.carriers[ty.name])
        if isinstance(ty, Zero):
            return []
        if isinstance(ty, Coprod) and not isinstance(ty.right, Exc):
            return [("L", a) for a in self.atoms(ty.left)] + [("R", b) for b in self.atoms(ty.right)]
        raise ValueOutsideCarrier(f"type {ty} has no ordinary atoms")

    def values(self, ty) -> list:
        """All values of ``ty`` (``E`` and ``X + E`` included)."""
        if isinstance(ty, Exc):
            return [Exceptional(i, a) for i, p in self.params.items() for a in self.atoms(p)]
        if isinstance(ty, Coprod) and isinstance(ty.right, Exc):
            return self.values(ty.left) + self.values(ty.right)
        return [Ordinary(a) for a in self.atoms(ty)]

    def with_tables(self, **tables) -> "FiniteModel":
        return FiniteModel(self.carriers, self.params, {**self.tables, **tables})

    def describe(self) -> str:
        cs = ", ".join(f"{k}:{len(v)}" for k, v in self.carriers.items())
        ps = ", ".join(f"{i}:{p}" for i, p in self.params.items())
        return f"carriers({cs}) params({ps})"


def _member(m: FiniteModel, ty, v) -> bool:
    return v in m.values(ty)


# ---------------------------------------------------------------------------
# Intended interpretation of the core operations


def _tag(i, v):
    if not isinstance(v, Ordinary):
        raise ValueOutsideCarrier(f"tag t{i} applied to {v}")
    return Exceptional(i, v.atom)


def _untag(i, v):
    if isinstance(v, Exceptional) and v.index == i:
        return Ordinary(v.atom)
    return v


def _lookup(m: FiniteModel, g: Gen, v):
    table = m.tables.get(g.name)
    if table is None:
        raise ValueOutsideCarrier(f"no interpretation for {g.name}")
    try:
        return table[v]
    except KeyError:
        raise ValueOutsideCarrier(f"{v} outside the domain of {g.name}") from None


# ---------------------------------------------------------------------------
# Explicit side


def eval_explicit(t, m: FiniteModel, v):
    """Evaluate an explicit term at a value of its source."""
    if isinstance(t, Gen):
        if t.role == "tag":
            return _tag(t.index, v)
        if t.role == "untag":
            if not isinstance(v, Exceptional):
                raise ValueOutsideCarrier(f"untag c{t.index} applied to {v}")
            return _untag(t.index, v)
        return _lookup(m, t, v)
    if isinstance(t, (Id, In, Ina)):
        return v
    if isinstance(t, EmptyMap):
        raise ValueOutsideCarrier("the empty map has no inputs")
    if isinstance(t, Comp):
        return eval_explicit(t.outer, m, eval_explicit(t.inner, m, v))
    if isinstance(t, ExplCotuple):
        if isinstance(v, Exceptional):
            return eval_explicit(t.right, m, v)
        return eval_explicit(t.left, m, v)
    if isinstance(t, Case):
        side, a = _split(v)
        return eval_explicit(t.left if side == "L" else t.right, m, Ordinary(a))
    if isinstance(t, TagCase):
        if not isinstance(v, Exceptional):
            raise ValueOutsideCarrier(f"tag case applied to {v}")
        return eval_explicit(t.branch(v.index), m, Ordinary(v.atom))
    if isinstance(t, Copi1):
        return Ordinary(("L", v.atom))
    if isinstance(t, Copi2):
        return Ordinary(("R", v.atom))
    raise TypeError(f"not an explicit term: {type(t).__name__}")


def _split(v):
    if not isinstance(v, Ordinary) or not isinstance(v.atom, tuple):
        raise ValueOutsideCarrier(f"{v} is not in a coproduct")
    return v.atom


# ---------------------------------------------------------------------------
# Decorated side


def eval_decorated(t, m: FiniteModel, v):
    """Interpret ``t`` as a map ``X + E -> Y + E`` (conversions applied eagerly).

    Pure terms and propagators let every exceptional input through unchanged.
    """
    if t.deco is None:
        raise TypeError("eval_decorated expects a decorated term")
    if isinstance(v, Exceptional) and t.deco <= Deco.PPG:
        return v
    if isinstance(t, Gen):
        if t.name in m.tables:
            return _lookup(m, t, v)
        if t.role == "tag":
            return _tag(t.index, v)
        if t.role == "untag":
            return _untag(t.index, v)
        return _lookup(m, t, v)
    if isinstance(t, Id):
        return v
    if isinstance(t, EmptyMap):
        raise ValueOutsideCarrier("the empty map has no ordinary inputs")
    if isinstance(t, Comp):
        return eval_decorated(t.outer, m, eval_decorated(t.inner, m, v))
    if isinstance(t, Downcast):
        return eval_decorated(t.body, m, v)
    if isinstance(t, Cotuple):
        if isinstance(v, Exceptional):
            return eval_decorated(t.right, m, v)
        if t.is_case_zero:
            return eval_decorated(t.left, m, v)
        side, a = _split(v)
        return eval_decorated(t.left if side == "L" else t.right, m, Ordinary(a))
    if isinstance(t, TagCotuple):
        if not isinstance(v, Exceptional):
            raise ValueOutsideCarrier(f"{v} is not an exception")
        return eval_decorated(t.branch(v.index), m, Ordinary(v.atom))
    if isinstance(t, Copi1):
        return Ordinary(("L", v.atom))
    if isinstance(t, Copi2):
        return Ordinary(("R", v.atom))
    raise TypeError(f"not a decorated term: {type(t).__name__}")


def evaluate(t, m: FiniteModel, v):
    return eval_explicit(t, m, v) if t.deco is None else eval_decorated(t, m, v)


# ---------------------------------------------------------------------------
# Oracle


def domain(eq: Equation, m: FiniteModel) -> list:
    """Inputs on which the two sides must agree."""
    if eq.strength is Strength.EXPLICIT:
        return m.values(eq.lhs.src)
    if eq.strength is Strength.STRONG:
        return m.values(plus_e(eq.lhs.src))
    return m.values(eq.lhs.src)


def counterexample(eq: Equation, m: FiniteModel) -> Optional[tuple]:
    """First input where the sides differ, as ``(input, lhs value, rhs value)``."""
    for v in domain(eq, m):
        a, b = evaluate(eq.lhs, m, v), evaluate(eq.rhs, m, v)
        if a != b:
            return v, a, b
    return None


def oracle_holds(eq: Equation, m: FiniteModel) -> bool:
    return counterexample(eq, m) is None


# ---------------------------------------------------------------------------
# Models


def intended_model(carriers: dict, params: dict, tables: Optional[dict] = None) -> FiniteModel:
    params = {str(i): (Base(p) if isinstance(p, str) else p) for i, p in params.items()}
    carriers = {k: tuple(v) for k, v in carriers.items()}
    return FiniteModel(carriers, params, dict(tables or {}))


def atoms_for(name: str, n: int) -> tuple:
    stem = name.lower()[:1] or "x"
    return tuple(f"{stem}{j}" for j in range(n))


def battery(base_types=("A", "B"), sizes=range(4), index_counts=(1, 2)) -> Iterator[FiniteModel]:
    """Every carrier-size assignment to the base types and every assignment of
    a base type to each index, for each index count.  Deterministic order."""
    base_types = tuple(base_types)
    for n in index_counts:
        for sz in itertools.product(sizes, repeat=len(base_types)):
            carriers = {b: atoms_for(b, k) for b, k in zip(base_types, sz)}
            for choice in itertools.product(base_types, repeat=n):
                params = {str(i + 1): Base(choice[i]) for i in range(n)}
                yield FiniteModel(carriers, params, {})


def random_table(m: FiniteModel, g: Gen, rng: random.Random, deco: Optional[Deco] = None) -> Optional[dict]:
    """A random interpretation of a generator, or None if none exists."""
    deco = g.deco if deco is None else deco
    if deco is Deco.CTC:
        dom, cod = m.values(plus_e(g.src)), m.values(plus_e(g.tgt))
    elif deco is Deco.PPG:
        dom, cod = m.values(g.src), m.values(plus_e(g.tgt))
    else:
        dom, cod = m.values(g.src), m.values(g.tgt)
    if dom and not cod:
        return None
    return {v: rng.choice(cod) for v in dom}


def all_tables(m: FiniteModel, g: Gen, deco: Optional[Deco] = None) -> Iterator[dict]:
    deco = g.deco if deco is None else deco
    if deco is Deco.CTC:
        dom, cod = m.values(plus_e(g.src)), m.values(plus_e(g.tgt))
    elif deco is Deco.PPG:
        dom, cod = m.values(g.src), m.values(plus_e(g.tgt))
    else:
        dom, cod = m.values(g.src), m.values(g.tgt)
    for image in itertools.product(cod, repeat=len(dom)):
        yield dict(zip(dom, image))


def table_count(m: FiniteModel, g: Gen, deco: Optional[Deco] = None) -> int:
    deco = g.deco if deco is None else deco
    if deco is Deco.CTC:
        dom, cod = m.values(plus_e(g.src)), m.values(plus_e(g.tgt))
    elif deco is Deco.PPG:
        dom, cod = m.values(g.src), m.values(plus_e(g.tgt))
    else:
        dom, cod = m.values(g.src), m.values(g.tgt)
    return len(cod) ** len(dom)


def user_generators(spec: DecoratedSpec) -> list:
    return [g for g in spec.ops if g.role is None]


def random_model(spec: DecoratedSpec, rng: random.Random, max_size: int = 3,
                 attempts: int = 200) -> FiniteModel:
    """Random carriers (sizes 0..max_size) and random tables for the spec's
    own generators.  Tags and untags keep their intended meaning."""
    names = [n for n in spec.types if n != "1"]
    for _ in range(attempts):
        carriers = {n: atoms_for(n, rng.randint(0, max_size)) for n in names}
        m = FiniteModel(carriers, dict(spec.params), {})
        tables = {}
        for g in user_generators(spec):
            tab = random_table(m, g, rng)
            if tab is None:
                break
            tables[g.name] = tab
        else:
            return m.with_tables(**tables)
    raise ValueError("could not build a random model for this signature")


def models_for(spec: DecoratedSpec, count: int, seed: int = 0, max_size: int = 3) -> list:
    rng = random.Random(seed)
    return [random_model(spec, rng, max_size) for _ in range(count)]


def corrupt_untag(m: FiniteModel, i: str) -> FiniteModel:
    """Negative control: ``c_i`` sent to a constant ordinary value."""
    p = m.params[i]
    atoms = m.atoms(p)
    if not atoms:
        raise ValueError("cannot corrupt an untag with an empty parameter type")
    const = Ordinary(atoms[0])
    table = {v: const for v in m.values(plus_e(Zero()))}
    return m.with_tables(**{f"c{i}": table})


# ---------------------------------------------------------------------------
# Semantic commutation check


@dataclass
class CommutationReport:
    ok: bool
    checked: int
    witness: Optional[dict] = None

    def __str__(self) -> str:
        if self.ok:
            return f"pass ({self.checked} items)"
        w = self.witness
        return (f"fail at {w['item']} on {w['input']}: decorated {w['decorated']}, "
                f"explicit {w['explicit']}")


def commutation_witness(t, m: FiniteModel):
    """First input where decorated evaluation and expanded evaluation disagree."""
    from .expand import catcher_form
    form = catcher_form(t)
    for v in m.values(plus_e(t.src)):
        a, b = eval_decorated(t, m, v), eval_explicit(form, m, v)
        if a != b:
            return v, a, b
    return None


def derived_operations(spec: DecoratedSpec, m: FiniteModel) -> Iterator[tuple]:
    """Generators, throws and small try/catch terms built from the spec."""
    from .handler import build_throw, build_try_catch
    from .syntax import Id as _Id
    for g in spec.generators().values():
        yield g.name, g
    ys = list(spec.all_types())
    for i in spec.indices:
        for y in ys:
            yield f"throw{{{i},{y}}}", build_throw(i, y, spec)
    # propagators Y -> Y: identity, user endomorphisms and throws from Y
    for y in ys:
        bodies = [_Id(y)] + [g for g in user_generators(spec) if g.src == y and g.tgt == y
                             and g.deco <= Deco.PPG]
        fs = bodies + [build_throw(i, y, spec) for i in spec.indices if spec.param(i) == y]
        handlers = {i: [b for b in bodies if spec.param(i) == y] +
                    [build_throw(j, y, spec) for j in spec.indices if spec.param(i) == spec.param(j) == y]
                    for i in spec.indices}
        for f in fs:
            for i in spec.indices:
                for g in handlers[i]:
                    yield f"try/{i}", build_try_catch(f, [(i, g)], spec)
                    for j in spec.indices:
                        for h in handlers[j]:
                            yield f"try/{i},{j}", build_try_catch(f, [(i, g), (j, h)], spec)


def theorem_444_check(spec: DecoratedSpec, m: FiniteModel) -> CommutationReport:
    """Decorated evaluation agrees with explicit evaluation of the expansion
    for every generator and every derived raising/handling operation."""
    n = 0
    for name, t in derived_operations(spec, m):
        n += 1
        w = commutation_witness(t, m)
        if w is not None:
            v, a, b = w
            return CommutationReport(False, n, {"item": name, "input": str(v),
                                                "decorated": str(a), "explicit": str(b)})
    return CommutationReport(True, n)


# ---------------------------------------------------------------------------
# Compiled evaluation
#
# The bulk checks evaluate the same term on many inputs and many tables.
# ``compile_term`` turns a term into a closure over ``m.tables`` (read at call
# time, so tables may be swapped in place); it agrees with ``evaluate``.


def _table_fn(tables, name):
    def run(v):
        try:
            return tables[name][v]
        except KeyError:
            raise ValueOutsideCarrier(f"{v} outside the domain of {name}") from None
    return run


def _compile_explicit(t, tables):
    if isinstance(t, Gen):
        if t.role == "tag":
            i = t.index
            return lambda v: Exceptional(i, v.atom)
        if t.role == "untag":
            i = t.index
            return lambda v: Ordinary(v.atom) if v.index == i else v
        return _table_fn(tables, t.name)
    if isinstance(t, (Id, In, Ina)):
        return lambda v: v
    if isinstance(t, Comp):
        f, g = _compile_explicit(t.outer, tables), _compile_explicit(t.inner, tables)
        return lambda v: f(g(v))
    if isinstance(t, ExplCotuple):
        f, k = _compile_explicit(t.left, tables), _compile_explicit(t.right, tables)
        return lambda v: k(v) if type(v) is Exceptional else f(v)
    if isinstance(t, Case):
        f, g = _compile_explicit(t.left, tables), _compile_explicit(t.right, tables)
        return lambda v: (f if v.atom[0] == "L" else g)(Ordinary(v.atom[1]))
    if isinstance(t, TagCase):
        bs = {i: _compile_explicit(b, tables) for i, b in t.branches}
        return lambda v: bs[v.index](Ordinary(v.atom))
    if isinstance(t, Copi1):
        return lambda v: Ordinary(("L", v.atom))
    if isinstance(t, Copi2):
        return lambda v: Ordinary(("R", v.atom))
    return lambda v: eval_explicit(t, _Tables(tables), v)


class _Tables:
    def __init__(self, tables):
        self.tables = tables


def _compile_decorated(t, tables):
    fn = _compile_decorated_core(t, tables)
    if t.deco <= Deco.PPG and not isinstance(t, (Id, Comp)):
        inner = fn
        return lambda v: v if type(v) is Exceptional else inner(v)
    return fn


def _compile_decorated_core(t, tables):
    if isinstance(t, Gen):
        if t.name in tables:
            return _table_fn(tables, t.name)
        if t.role == "tag":
            i = t.index
            return lambda v: Exceptional(i, v.atom)
        if t.role == "untag":
            i = t.index
            return lambda v: Ordinary(v.atom) if type(v) is Exceptional and v.index == i else v
        return _table_fn(tables, t.name)
    if isinstance(t, Id):
        return lambda v: v
    if isinstance(t, Comp):
        f, g = _compile_decorated(t.outer, tables), _compile_decorated(t.inner, tables)
        return lambda v: f(g(v))
    if isinstance(t, Downcast):
        return _compile_decorated(t.body, tables)
    if isinstance(t, Cotuple):
        f, k = _compile_decorated(t.left, tables), _compile_decorated(t.right, tables)
        if t.is_case_zero:
            return lambda v: k(v) if type(v) is Exceptional else f(v)
        return lambda v: (k(v) if type(v) is Exceptional else
                          (f if v.atom[0] == "L" else k)(Ordinary(v.atom[1])))
    if isinstance(t, TagCotuple):
        bs = {i: _compile_decorated(b, tables) for i, b in t.branches}
        return lambda v: bs[v.index](Ordinary(v.atom))
    if isinstance(t, Copi1):
        return lambda v: Ordinary(("L", v.atom))
    if isinstance(t, Copi2):
        return lambda v: Ordinary(("R", v.atom))

    def fallback(v):
        return eval_decorated(t, _Tables(tables), v)
    return fallback


def compile_term(t, m: FiniteModel):
    """A closure ``v -> value`` equivalent to ``evaluate(t, m, v)``."""
    if t.deco is None:
        return _compile_explicit(t, m.tables)
    return _compile_decorated(t, m.tables)
