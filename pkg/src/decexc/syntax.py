"""Types, decorated and explicit terms, equations and specifications.

Terms are immutable trees. Every node stores its source, target and (on the
decorated side) its decoration; explicit-side nodes carry ``deco=None``.
The decoration of a composite node is computed once, at construction, by
:func:`join_decoration`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


class TermTypeError(TypeError):
    """Ill-typed or ill-decorated term construction."""


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Coprod:
    left: "ObjType"
    right: "ObjType"

    def __post_init__(self):
        if isinstance(self.left, Zero) or isinstance(self.right, Zero):
            raise TermTypeError("coproduct with an empty summand")

    def __str__(self) -> str:
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Exc:
    def __str__(self) -> str:
        return "E"


ObjType = Union[Base, Zero, Coprod, Exc]

ZERO = Zero()
EXC = Exc()
UNIT = Base("1")


def mentions_exc(ty: ObjType) -> bool:
    if isinstance(ty, Exc):
        return True
    if isinstance(ty, Coprod):
        return mentions_exc(ty.left) or mentions_exc(ty.right)
    return False


def plus_e(ty: ObjType) -> ObjType:
    """``X + E`` with ``0 + E`` identified with ``E``."""
    if isinstance(ty, Zero):
        return EXC
    return Coprod(ty, EXC)


def base_names(ty: ObjType) -> set[str]:
    if isinstance(ty, Base):
        return {ty.name}
    if isinstance(ty, Coprod):
        return base_names(ty.left) | base_names(ty.right)
    return set()


# ---------------------------------------------------------------------------
# Decorations


class Deco(enum.IntEnum):
    PURE = 0
    PPG = 1
    CTC = 2

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Deco":
        try:
            return cls[text.upper()]
        except KeyError:
            raise ValueError(f"unknown decoration {text!r}") from None


# ---------------------------------------------------------------------------
# Terms


def _check_same_side(*terms: "Term") -> Optional[Deco]:
    sides = {t.deco is None for t in terms}
    if len(sides) > 1:
        raise TermTypeError("mixing decorated and explicit terms")
    return None


@dataclass(frozen=True)
class Gen:
    """A declared generator. ``role`` marks the core tag/untag operations."""

    name: str
    src: ObjType
    tgt: ObjType
    deco: Optional[Deco] = None
    role: Optional[str] = None
    index: Optional[str] = None

    def __post_init__(self):
        if self.deco is not None and (mentions_exc(self.src) or mentions_exc(self.tgt)):
            raise TermTypeError(f"decorated generator {self.name} mentions E")


@dataclass(frozen=True)
class Id:
    at: ObjType
    explicit: bool = False
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        if not self.explicit and mentions_exc(self.at):
            raise TermTypeError("decorated identity on a type mentioning E")
        object.__setattr__(self, "src", self.at)
        object.__setattr__(self, "tgt", self.at)
        object.__setattr__(self, "deco", None if self.explicit else Deco.PURE)


@dataclass(frozen=True)
class EmptyMap:
    """``[]_X : 0 -> X``."""

    into: ObjType
    explicit: bool = False
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        if not self.explicit and mentions_exc(self.into):
            raise TermTypeError("decorated empty map into a type mentioning E")
        object.__setattr__(self, "src", ZERO)
        object.__setattr__(self, "tgt", self.into)
        object.__setattr__(self, "deco", None if self.explicit else Deco.PURE)


@dataclass(frozen=True)
class Comp:
    """``outer o inner``."""

    outer: "Term"
    inner: "Term"
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        _check_same_side(self.outer, self.inner)
        if self.inner.tgt != self.outer.src:
            raise TermTypeError(
                f"cannot compose {self.outer.src}->{self.outer.tgt} "
                f"after {self.inner.src}->{self.inner.tgt}"
            )
        object.__setattr__(self, "src", self.inner.src)
        object.__setattr__(self, "tgt", self.outer.tgt)
        object.__setattr__(self, "deco", join_decoration(self))


@dataclass(frozen=True)
class Downcast:
    """``down(k)``: the propagator agreeing with the catcher ``k`` on ordinary values."""

    body: "Term"
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        if self.body.deco is None:
            raise TermTypeError("downcast of an explicit term")
        object.__setattr__(self, "src", self.body.src)
        object.__setattr__(self, "tgt", self.body.tgt)
        object.__setattr__(self, "deco", Deco.PPG)


@dataclass(frozen=True)
class Cotuple:
    """Decorated case distinction ``[left | right]``.

    When ``right`` starts at 0 this is the case distinction on ``X + 0``
    (source ``left.src``); otherwise it is the semi-pure coproduct on
    ``left.src + right.src``.  Only ``right`` may be a catcher: exceptions
    entering the cotuple are handed to it.
    """

    left: "Term"
    right: "Term"
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        if self.left.deco is None or self.right.deco is None:
            raise TermTypeError("decorated cotuple of explicit terms")
        if self.left.tgt != self.right.tgt:
            raise TermTypeError("cotuple components have different targets")
        if self.left.deco > Deco.PPG:
            raise TermTypeError("left component of a cotuple must be a propagator")
        if isinstance(self.right.src, Zero):
            src = self.left.src
        elif isinstance(self.left.src, Zero):
            raise TermTypeError("cotuple with an empty left summand; put the 0-component on the right")
        else:
            src = Coprod(self.left.src, self.right.src)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", self.left.tgt)
        object.__setattr__(self, "deco", join_decoration(self))

    @property
    def is_case_zero(self) -> bool:
        return isinstance(self.right.src, Zero)


@dataclass(frozen=True)
class TagCotuple:
    """``[f_i]_i : 0 -> Y`` built on the tags as constitutive coproduct of 0."""

    branches: tuple  # tuple[tuple[str, Term], ...] in index order
    into: ObjType
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        for _, b in self.branches:
            if b.deco is None:
                raise TermTypeError("tag cotuple branch is explicit")
            if b.deco > Deco.PPG:
                raise TermTypeError("tag cotuple branches must be propagators")
            if b.tgt != self.into:
                raise TermTypeError("tag cotuple branch has wrong target")
        object.__setattr__(self, "src", ZERO)
        object.__setattr__(self, "tgt", self.into)
        object.__setattr__(self, "deco", Deco.CTC)

    def branch(self, index: str) -> "Term":
        for i, b in self.branches:
            if i == index:
                return b
        raise KeyError(index)


@dataclass(frozen=True)
class Copi1:
    left: ObjType
    right: ObjType
    explicit: bool = False
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "src", self.left)
        object.__setattr__(self, "tgt", Coprod(self.left, self.right))
        object.__setattr__(self, "deco", None if self.explicit else Deco.PURE)


@dataclass(frozen=True)
class Copi2:
    left: ObjType
    right: ObjType
    explicit: bool = False
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "src", self.right)
        object.__setattr__(self, "tgt", Coprod(self.left, self.right))
        object.__setattr__(self, "deco", None if self.explicit else Deco.PURE)


# explicit-only nodes


@dataclass(frozen=True)
class In:
    """``in_X : X -> X + E``."""

    at: ObjType
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False, default=None)

    def __post_init__(self):
        if isinstance(self.at, Zero):
            raise TermTypeError("in_0 is the empty map; use inn()")
        object.__setattr__(self, "src", self.at)
        object.__setattr__(self, "tgt", plus_e(self.at))


@dataclass(frozen=True)
class Ina:
    """``ina_X : E -> X + E``."""

    at: ObjType
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False, default=None)

    def __post_init__(self):
        if isinstance(self.at, Zero):
            raise TermTypeError("ina_0 is the identity of E; use ina()")
        object.__setattr__(self, "src", EXC)
        object.__setattr__(self, "tgt", plus_e(self.at))


@dataclass(frozen=True)
class ExplCotuple:
    """``[f | k] : X + E -> Y`` for ``f : X -> Y`` and ``k : E -> Y``."""

    left: "Term"
    right: "Term"
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False, default=None)

    def __post_init__(self):
        if self.left.deco is not None or self.right.deco is not None:
            raise TermTypeError("explicit cotuple of decorated terms")
        if not isinstance(self.right.src, Exc):
            raise TermTypeError("right component of [f|k] must start at E")
        if isinstance(self.left.src, Zero):
            raise TermTypeError("[f|k] on 0 + E; use expl_cotuple()")
        if self.left.tgt != self.right.tgt:
            raise TermTypeError("[f|k] components have different targets")
        object.__setattr__(self, "src", plus_e(self.left.src))
        object.__setattr__(self, "tgt", self.left.tgt)


@dataclass(frozen=True)
class Case:
    """Explicit case distinction on a pure coproduct ``A + B``."""

    left: "Term"
    right: "Term"
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False, default=None)

    def __post_init__(self):
        if self.left.deco is not None or self.right.deco is not None:
            raise TermTypeError("explicit case of decorated terms")
        if self.left.tgt != self.right.tgt:
            raise TermTypeError("case components have different targets")
        object.__setattr__(self, "src", Coprod(self.left.src, self.right.src))
        object.__setattr__(self, "tgt", self.left.tgt)


@dataclass(frozen=True)
class TagCase:
    """Explicit case distinction on ``E = sum_i P_i`` along the tags."""

    branches: tuple
    into: ObjType
    src: ObjType = field(init=False)
    tgt: ObjType = field(init=False)
    deco: Optional[Deco] = field(init=False, default=None)

    def __post_init__(self):
        for _, b in self.branches:
            if b.deco is not None:
                raise TermTypeError("tag case branch is decorated")
            if b.tgt != self.into:
                raise TermTypeError("tag case branch has wrong target")
        object.__setattr__(self, "src", EXC)
        object.__setattr__(self, "tgt", self.into)

    def branch(self, index: str) -> "Term":
        for i, b in self.branches:
            if i == index:
                return b
        raise KeyError(index)


Term = Union[Gen, Id, EmptyMap, Comp, Downcast, Cotuple, TagCotuple, Copi1, Copi2,
             In, Ina, ExplCotuple, Case, TagCase]

DECORATED_ONLY = (Downcast, Cotuple, TagCotuple)
EXPLICIT_ONLY = (In, Ina, ExplCotuple, Case, TagCase)


def join_decoration(t: Term) -> Optional[Deco]:
    """Least decoration of a node given the stored decorations of its children."""
    if isinstance(t, Comp):
        if t.outer.deco is None:
            return None
        return max(t.outer.deco, t.inner.deco)
    if isinstance(t, Cotuple):
        return max(t.left.deco, t.right.deco)
    if isinstance(t, (Id, EmptyMap, Copi1, Copi2)):
        return None if t.explicit else Deco.PURE
    if isinstance(t, Downcast):
        return Deco.PPG
    if isinstance(t, TagCotuple):
        return Deco.CTC
    return t.deco


def children(t: Term) -> tuple:
    if isinstance(t, Comp):
        return (t.outer, t.inner)
    if isinstance(t, (Cotuple, ExplCotuple, Case)):
        return (t.left, t.right)
    if isinstance(t, Downcast):
        return (t.body,)
    if isinstance(t, (TagCotuple, TagCase)):
        return tuple(b for _, b in t.branches)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def size(t: Term) -> int:
    return 1 + sum(size(c) for c in children(t))


def depth(t: Term) -> int:
    cs = children(t)
    return 1 + (max(depth(c) for c in cs) if cs else 0)


def generators(t: Term) -> set:
    return {u for u in subterms(t) if isinstance(u, Gen)}


def infer_decoration(t: Term) -> Optional[Deco]:
    """Recompute the decoration of ``t`` bottom-up, re-validating typing.

    Generator decorations are taken as given; every composite node gets the
    least decoration allowed by the conversion and closure rules. Raises
    :class:`TermTypeError` on a type mismatch anywhere in the tree and if a
    stored decoration disagrees with the recomputed one.
    """
    if isinstance(t, Gen):
        return t.deco
    decos = [infer_decoration(c) for c in children(t)]
    if isinstance(t, Comp):
        if t.inner.tgt != t.outer.src:
            raise TermTypeError("composition type mismatch")
        d = None if decos[0] is None else max(decos)
    elif isinstance(t, Cotuple):
        if t.left.tgt != t.right.tgt:
            raise TermTypeError("cotuple type mismatch")
        d = max(decos)
    else:
        d = join_decoration(t)
    if d != t.deco:
        raise TermTypeError(f"stored decoration {t.deco} disagrees with inferred {d}")
    return d


def check_consistent(t: Term) -> list[str]:
    """Full traversal asserting src/tgt agreement at every node."""
    problems = []
    for u in subterms(t):
        if isinstance(u, Comp) and u.inner.tgt != u.outer.src:
            problems.append(f"composition mismatch at {u}")
        if isinstance(u, Comp) and (u.src != u.inner.src or u.tgt != u.outer.tgt):
            problems.append("composition endpoints")
        if isinstance(u, (Cotuple, ExplCotuple, Case)) and u.left.tgt != u.right.tgt:
            problems.append("cotuple targets differ")
        if u.deco is not None and (mentions_exc(u.src) or mentions_exc(u.tgt)):
            problems.append("decorated term mentions E")
        if u.deco is not None and isinstance(u, EXPLICIT_ONLY):
            problems.append("explicit node on the decorated side")
    return problems


# ---------------------------------------------------------------------------
# Smart constructors


def comp(*terms: Term) -> Term:
    """``comp(h, g, f) = h o (g o f)``; a single argument is returned unchanged."""
    if not terms:
        raise ValueError("comp() needs at least one term")
    result = terms[-1]
    for t in reversed(terms[:-1]):
        result = Comp(t, result)
    return result


def inn(ty: ObjType) -> Term:
    return EmptyMap(EXC, explicit=True) if isinstance(ty, Zero) else In(ty)


def ina(ty: ObjType) -> Term:
    return Id(EXC, explicit=True) if isinstance(ty, Zero) else Ina(ty)


def expl_cotuple(f: Term, k: Term) -> Term:
    """``[f | k]`` with ``0 + E`` identified with ``E`` (then the result is ``k``)."""
    if isinstance(f.src, Zero):
        if f.tgt != k.tgt:
            raise TermTypeError("[f|k] components have different targets")
        return k
    return ExplCotuple(f, k)


def plus(f: Term, k: Term) -> Term:
    """``f + k : A + B -> C + D`` with ``A + 0 = A`` and ``0 + B = B``."""
    c, d = f.tgt, k.tgt
    left = Comp(Copi1(c, d), f)
    right = Comp(Copi2(c, d), k)
    if isinstance(f.src, Zero) and not isinstance(k.src, Zero):
        return Cotuple(right, left)
    return Cotuple(left, right)


def tag_cotuple(branches: dict, into: ObjType) -> TagCotuple:
    return TagCotuple(tuple(branches.items()), into)


# ---------------------------------------------------------------------------
# Equations


class Strength(enum.Enum):
    STRONG = "strong"
    WEAK = "weak"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    strength: Strength

    def __post_init__(self):
        if self.lhs.src != self.rhs.src or self.lhs.tgt != self.rhs.tgt:
            raise TermTypeError(
                f"equation sides are not parallel: {self.lhs.src}->{self.lhs.tgt} "
                f"vs {self.rhs.src}->{self.rhs.tgt}"
            )
        explicit = self.lhs.deco is None and self.rhs.deco is None
        decorated = self.lhs.deco is not None and self.rhs.deco is not None
        if not (explicit or decorated):
            raise TermTypeError("equation mixes decorated and explicit sides")
        if explicit != (self.strength is Strength.EXPLICIT):
            raise TermTypeError("explicit equations use the explicit strength only")

    @property
    def src(self) -> ObjType:
        return self.lhs.src

    @property
    def tgt(self) -> ObjType:
        return self.lhs.tgt


def strong(lhs: Term, rhs: Term) -> Equation:
    return Equation(lhs, rhs, Strength.STRONG)


def weak(lhs: Term, rhs: Term) -> Equation:
    return Equation(lhs, rhs, Strength.WEAK)


def explicit_eq(lhs: Term, rhs: Term) -> Equation:
    return Equation(lhs, rhs, Strength.EXPLICIT)


# ---------------------------------------------------------------------------
# Specifications


def tag_name(i: str) -> str:
    return f"t{i}"


def untag_name(i: str) -> str:
    return f"c{i}"


@dataclass(frozen=True)
class DecoratedSpec:
    """Decorated specification: pure signature, exception indices, axioms.

    ``ops`` may also hold declarations of the core ``t_i``/``c_i`` (checked by
    :func:`check_wellformed`) and extra propagator/catcher generators used as
    proof hypotheses.
    """

    types: tuple = ()
    ops: tuple = ()
    indices: tuple = ()
    params: tuple = ()  # tuple[(index, ObjType)] aligned with indices
    axioms: tuple = ()

    def param(self, i: str) -> ObjType:
        return dict(self.params)[i]

    def op(self, name: str) -> Optional[Gen]:
        for g in self.ops:
            if g.name == name:
                return g
        return None

    def tag(self, i: str) -> Gen:
        return self.op(tag_name(i)) or Gen(tag_name(i), self.param(i), ZERO, Deco.PPG, "tag", i)

    def untag(self, i: str) -> Gen:
        return self.op(untag_name(i)) or Gen(untag_name(i), ZERO, self.param(i), Deco.CTC, "untag", i)

    def generators(self) -> dict:
        out = {g.name: g for g in self.ops}
        for i in self.indices:
            out.setdefault(tag_name(i), self.tag(i))
            out.setdefault(untag_name(i), self.untag(i))
        return out

    def pure_ops(self) -> tuple:
        return tuple(g for g in self.ops if g.deco is Deco.PURE and g.role is None)

    def with_ops(self, *gens: Gen) -> "DecoratedSpec":
        return DecoratedSpec(self.types, self.ops + tuple(gens), self.indices, self.params, self.axioms)

    def with_axioms(self, *eqs: Equation) -> "DecoratedSpec":
        return DecoratedSpec(self.types, self.ops, self.indices, self.params, self.axioms + tuple(eqs))

    def all_types(self) -> tuple:
        """Declared base types, plus ``1`` if some generator uses it."""
        names = list(self.types)
        for g in self.ops:
            for n in sorted(base_names(g.src) | base_names(g.tgt)):
                if n not in names:
                    names.append(n)
        return tuple(Base(n) for n in names)


def canonical_axioms(spec_or_indices, params=None) -> tuple:
    """The weak equations ``c_i o t_i ~ id`` and ``c_i o t_j ~ [] o t_j``."""
    if isinstance(spec_or_indices, DecoratedSpec):
        spec = spec_or_indices
    else:
        spec = DecoratedSpec(indices=tuple(spec_or_indices), params=tuple(params))
    out = []
    for i in spec.indices:
        c = spec.untag(i)
        out.append(weak(Comp(c, spec.tag(i)), Id(spec.param(i))))
        for j in spec.indices:
            if j != i:
                tj = spec.tag(j)
                out.append(weak(Comp(c, tj), Comp(EmptyMap(spec.param(i)), tj)))
    return tuple(out)


def decorated_spec(types, pure_ops, indices_params, extra_axioms=()) -> DecoratedSpec:
    """Build S_deco for ``(Sigma_pu, I, P)``; ``indices_params`` maps index -> type."""
    items = tuple((str(i), p) for i, p in dict(indices_params).items())
    base = DecoratedSpec(tuple(types), tuple(pure_ops), tuple(i for i, _ in items), items, ())
    return base.with_axioms(*canonical_axioms(base), *extra_axioms)


def pure_op(name: str, src: str, tgt: str) -> Gen:
    return Gen(name, Base(src), Base(tgt), Deco.PURE)


# ---------------------------------------------------------------------------
# Well-formedness


@dataclass(frozen=True)
class Violation:
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


def check_wellformed(spec: DecoratedSpec) -> list:
    """Report every violated invariant of a decorated specification."""
    out = []
    declared = set(spec.types) | {"1"}
    gens = spec.generators()
    for g in spec.ops:
        loc = f"op {g.name}"
        if g.deco is None:
            out.append(Violation(loc, "generator without decoration"))
            continue
        unknown = (base_names(g.src) | base_names(g.tgt)) - declared
        if unknown:
            out.append(Violation(loc, f"undeclared type(s) {sorted(unknown)}"))
        if g.role is None and g.deco is Deco.PURE:
            if not isinstance(g.src, Base) or not isinstance(g.tgt, Base):
                out.append(Violation(loc, "pure operations must be constants or unary over base types"))
    for i in spec.indices:
        p = spec.param(i)
        if not isinstance(p, Base) or p.name not in declared:
            out.append(Violation(f"exception {i}", f"parameter type {p} is not a declared pure type"))
        t, c = spec.tag(i), spec.untag(i)
        if t.src != p or t.tgt != ZERO:
            out.append(Violation(f"op {t.name}", "tag arity: expected P_i -> 0"))
        if t.deco is not Deco.PPG:
            out.append(Violation(f"op {t.name}", "tag decoration must be ppg"))
        if c.src != ZERO or c.tgt != p:
            out.append(Violation(f"op {c.name}", "untag arity: expected 0 -> P_i"))
        if c.deco is not Deco.CTC:
            out.append(Violation(f"op {c.name}", "untag decoration must be ctc"))
    try:
        expected = canonical_axioms(spec)
    except TermTypeError as exc:
        expected = ()
        out.append(Violation("axioms", f"canonical axioms are ill-typed: {exc}"))
    for eq in expected:
        n = sum(1 for a in spec.axioms if a == eq)
        kind = "diagonal" if eq.rhs == Id(eq.rhs.src) else "cross"
        if n == 0:
            out.append(Violation("axioms", f"missing {kind} axiom {_brief(eq)}"))
        elif n > 1:
            out.append(Violation("axioms", f"duplicate {kind} axiom {_brief(eq)}"))
    for k, eq in enumerate(spec.axioms):
        if eq.strength is Strength.EXPLICIT:
            out.append(Violation(f"axiom {k}", "explicit equation in a decorated specification"))
        for side in (eq.lhs, eq.rhs):
            for g in generators(side):
                if gens.get(g.name) != g:
                    out.append(Violation(f"axiom {k}", f"undeclared generator {g.name}"))
            for problem in check_consistent(side):
                out.append(Violation(f"axiom {k}", problem))
    return out


def _brief(eq: Equation) -> str:
    from .formats import print_equation

    return print_equation(eq)


# ---------------------------------------------------------------------------
# Apparent (undecorated) specification


@dataclass(frozen=True)
class ApparentSpec:
    types: tuple
    ops: tuple  # tuple[(name, src, tgt)]
    formations: tuple  # schematic operations such as try/catch


def undecorate(spec: DecoratedSpec) -> ApparentSpec:
    """Drop decorations and forget the equations."""
    types = spec.all_types()
    ops = [(g.name, g.src, g.tgt) for g in spec.generators().values()]
    formations = []
    for i in spec.indices:
        for y in types:
            ops.append((f"throw_{i}_{y}", spec.param(i), y))
    if spec.indices:
        formations.append("try(f : X -> Y) catch(i_1 => g_1 | ... | i_n => g_n) : X -> Y, n >= 1")
    return ApparentSpec(tuple(str(t) for t in types), tuple(ops), tuple(formations))
