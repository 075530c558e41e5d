"""Text formats: terms, equations, ``.dexc`` specifications, ``.dproof``
derivations and ``.dmodel`` finite models.

Term grammar (``o`` is right associative)::

    term  ::= atom ('o' term)?
    atom  ::= NAME | 'id' '{' type '}' | '[]' '{' type '}' | 'down' '(' term ')'
            | '[' term '|' term ']' | 'case' '[' term '|' term ']'
            | 'tags' '{' type '}' '[' (INDEX '=>' term),* ']'
            | 'copi1' '{' type ',' type '}' | 'copi2' '{' type ',' type '}'
            | 'in' '{' type '}' | 'ina' '{' type '}'
            | 'plus' '(' term ',' term ')' | 'throw' '{' INDEX ',' type '}'
            | 'try' term 'catch' '(' (INDEX '=>' term),+ ')' | '(' term ')'
    type  ::= tatom ('+' type)?        tatom ::= NAME | NUMBER | 'E' | '(' type ')'

``[ | ]``, ``tags`` and ``try``/``throw`` build decorated or explicit nodes
depending on the parsing side.  Equations are ``lhs ~ rhs`` (weak) and
``lhs == rhs`` (strong, or plain on the explicit side).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .syntax import (
    EXC, ZERO, Base, Case, Comp, Coprod, Copi1, Copi2, Cotuple, Deco, DecoratedSpec,
    Downcast, EmptyMap, Equation, Exc, ExplCotuple, Gen, Id, In, Ina, Strength,
    TagCase, TagCotuple, Zero, expl_cotuple, plus, tag_name, untag_name,
)


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {message}" if line else message)


class UnknownIdentifier(SpecSyntaxError):
    pass


class DecorationAnnotationConflict(SpecSyntaxError):
    pass


KEYWORDS = {"o", "id", "down", "case", "tags", "copi1", "copi2", "in", "ina",
            "plus", "throw", "try", "catch", "type", "decl", "E"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>\|-|:=|=>|==|->|\[\]|[\[\]{}()|,;:~+])
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    col: int


def tokenize(text: str, line: int = 0) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    out.append(Token("eof", "", len(text) + 1))
    return out


# ---------------------------------------------------------------------------
# Printing


def print_type(ty) -> str:
    return str(ty)


def _paren(t) -> str:
    s = print_term(t)
    return f"({s})" if isinstance(t, Comp) else s


def print_term(t) -> str:
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Id):
        return f"id{{{t.at}}}"
    if isinstance(t, EmptyMap):
        return f"[]{{{t.into}}}"
    if isinstance(t, Comp):
        return f"{_paren(t.outer)} o {_paren(t.inner)}"
    if isinstance(t, Downcast):
        return f"down({print_term(t.body)})"
    if isinstance(t, (Cotuple, ExplCotuple)):
        return f"[{print_term(t.left)} | {print_term(t.right)}]"
    if isinstance(t, Case):
        return f"case[{print_term(t.left)} | {print_term(t.right)}]"
    if isinstance(t, (TagCotuple, TagCase)):
        inner = ", ".join(f"{i} => {print_term(b)}" for i, b in t.branches)
        return f"tags{{{t.into}}}[{inner}]"
    if isinstance(t, Copi1):
        return f"copi1{{{t.left}, {t.right}}}"
    if isinstance(t, Copi2):
        return f"copi2{{{t.left}, {t.right}}}"
    if isinstance(t, In):
        return f"in{{{t.at}}}"
    if isinstance(t, Ina):
        return f"ina{{{t.at}}}"
    raise TypeError(f"not a term: {t!r}")


def print_equation(eq: Equation) -> str:
    sym = "~" if eq.strength is Strength.WEAK else "=="
    return f"{print_term(eq.lhs)} {sym} {print_term(eq.rhs)}"


def print_gen(g: Gen) -> str:
    deco = f" [{g.deco}]" if g.deco is not None else ""
    return f"{g.name} : {g.src} -> {g.tgt}{deco}"


# ---------------------------------------------------------------------------
# Parsing


class Parser:
    """Recursive-descent parser over one line of tokens."""

    def __init__(self, text: str, gens: dict, *, explicit: bool = False,
                 spec: Optional[DecoratedSpec] = None, line: int = 0):
        self.toks = tokenize(text, line)
        self.pos = 0
        self.gens = gens
        self.explicit = explicit
        self.spec = spec
        self.line = line

    # -- token helpers
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Optional[Token] = None, cls=SpecSyntaxError):
        tok = tok or self.peek()
        return cls(msg, self.line, tok.col)

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "eof":
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise self.error(f"expected {text!r}, found {tok.text or 'end of line'!r}")
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "eof"

    def done(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.peek().text!r}")

    # -- types
    def type(self):
        left = self.tatom()
        if self.accept("+"):
            right = self.type()
            try:
                return Coprod(left, right)
            except TypeError as exc:
                raise self.error(str(exc)) from None
        return left

    def tatom(self):
        tok = self.next()
        if tok.text == "(":
            ty = self.type()
            self.expect(")")
            return ty
        if tok.kind == "num":
            return ZERO if tok.text == "0" else Base(tok.text)
        if tok.text == "E":
            return EXC
        if tok.kind == "name" and tok.text not in KEYWORDS:
            return Base(tok.text)
        raise self.error(f"expected a type, found {tok.text!r}", tok)

    def index(self) -> str:
        tok = self.next()
        if tok.kind not in ("num", "name"):
            raise self.error("expected an exception index", tok)
        if self.spec is not None and tok.text not in self.spec.indices:
            raise self.error(f"unknown exception index {tok.text}", tok, UnknownIdentifier)
        return tok.text

    # -- terms
    def term(self):
        first = self.atom()
        if self.accept("o"):
            rest = self.term()
            return self._build(Comp, first, rest)
        return first

    def _build(self, cls, *args):
        try:
            return cls(*args)
        except TypeError as exc:
            raise self.error(str(exc)) from None

    def braced_type(self):
        self.expect("{")
        ty = self.type()
        self.expect("}")
        return ty

    def atom(self):
        tok = self.next()
        text = tok.text
        if text == "(":
            t = self.term()
            self.expect(")")
            return t
        if text == "id":
            return self._build(Id, self.braced_type(), self.explicit)
        if text == "[]":
            return self._build(EmptyMap, self.braced_type(), self.explicit)
        if text == "down":
            self.expect("(")
            body = self.term()
            self.expect(")")
            return self._build(Downcast, body)
        if text == "[":
            left = self.term()
            self.expect("|")
            right = self.term()
            self.expect("]")
            if self.explicit:
                try:
                    return expl_cotuple(left, right)
                except TypeError as exc:
                    raise self.error(str(exc)) from None
            return self._build(Cotuple, left, right)
        if text == "case":
            self.expect("[")
            left = self.term()
            self.expect("|")
            right = self.term()
            self.expect("]")
            return self._build(Case, left, right)
        if text == "tags":
            into = self.braced_type()
            self.expect("[")
            branches = []
            if not self.accept("]"):
                while True:
                    i = self.index()
                    self.expect("=>")
                    branches.append((i, self.term()))
                    if self.accept("]"):
                        break
                    self.expect(",")
            cls = TagCase if self.explicit else TagCotuple
            return self._build(cls, tuple(branches), into)
        if text in ("copi1", "copi2"):
            self.expect("{")
            a = self.type()
            self.expect(",")
            b = self.type()
            self.expect("}")
            return self._build(Copi1 if text == "copi1" else Copi2, a, b, self.explicit)
        if text == "in":
            return self._build(In, self.braced_type())
        if text == "ina":
            return self._build(Ina, self.braced_type())
        if text == "plus":
            self.expect("(")
            f = self.term()
            self.expect(",")
            k = self.term()
            self.expect(")")
            try:
                return plus(f, k)
            except TypeError as exc:
                raise self.error(str(exc)) from None
        if text == "throw":
            from .handler import build_throw

            self.expect("{")
            i = self.index()
            self.expect(",")
            y = self.type()
            self.expect("}")
            return build_throw(i, y, self._need_spec(tok), explicit=self.explicit)
        if text == "try":
            return self.try_catch(tok)
        if tok.kind == "name" and text not in KEYWORDS:
            if text not in self.gens:
                raise self.error(f"unknown generator {text}", tok, UnknownIdentifier)
            return self.gens[text]
        raise self.error(f"unexpected {text or 'end of line'!r}", tok)

    def _need_spec(self, tok):
        if self.spec is None:
            raise self.error("throw/try need a specification context", tok)
        return self.spec

    def try_catch(self, tok):
        from .handler import build_try_catch

        spec = self._need_spec(tok)
        body = self.term()
        self.expect("catch")
        self.expect("(")
        clauses = []
        if not self.accept(")"):
            while True:
                i = self.index()
                self.expect("=>")
                clauses.append((i, self.term()))
                if self.accept(")"):
                    break
                self.expect(",")
        try:
            return build_try_catch(body, clauses, spec, explicit=self.explicit)
        except TypeError as exc:
            raise self.error(str(exc)) from None

    def equation(self) -> Equation:
        lhs = self.term()
        tok = self.next()
        if tok.text == "~":
            strength = Strength.WEAK
        elif tok.text == "==":
            strength = Strength.EXPLICIT if self.explicit else Strength.STRONG
        else:
            raise self.error("expected '~' or '=='", tok)
        rhs = self.term()
        try:
            return Equation(lhs, rhs, strength)
        except TypeError as exc:
            raise self.error(str(exc), tok) from None


def parse_type(text: str):
    p = Parser(text, {})
    ty = p.type()
    p.done()
    return ty


def parse_term(text: str, spec_or_gens, *, explicit: bool = False, line: int = 0):
    spec, gens = _context(spec_or_gens)
    p = Parser(text, gens, explicit=explicit, spec=spec, line=line)
    t = p.term()
    p.done()
    return t


def parse_equation(text: str, spec_or_gens, *, explicit: bool = False, line: int = 0) -> Equation:
    spec, gens = _context(spec_or_gens)
    p = Parser(text, gens, explicit=explicit, spec=spec, line=line)
    eq = p.equation()
    p.done()
    return eq


def _context(spec_or_gens):
    if isinstance(spec_or_gens, DecoratedSpec):
        return spec_or_gens, spec_or_gens.generators()
    if hasattr(spec_or_gens, "generators") and callable(spec_or_gens.generators):
        return None, spec_or_gens.generators()
    return None, dict(spec_or_gens)


# ---------------------------------------------------------------------------
# .dexc specifications

SECTIONS = ("logic", "types", "ops", "exceptions", "axioms")
_HEADER = re.compile(r"^(\w+)\s*:\s*(.*)$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _sections(text: str) -> dict:
    out = {name: [] for name in SECTIONS}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m and not raw[:1].isspace() and m.group(1) in SECTIONS:
            current = m.group(1)
            if m.group(2).strip():
                out[current].append((lineno, m.group(2).strip()))
            continue
        if current is None:
            raise SpecSyntaxError(f"content outside a section: {line.strip()!r}", lineno, 1)
        out[current].append((lineno, line.strip()))
    return out


_OP = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(.+?)\s*->\s*(.+?)\s*(?:\[(\w+)\])?$")


def _parse_op(lineno: int, text: str):
    m = _OP.match(text)
    if not m:
        raise SpecSyntaxError(f"malformed operation declaration {text!r}", lineno, 1)
    name, src, tgt, deco = m.groups()
    if name in KEYWORDS:
        raise SpecSyntaxError(f"reserved word {name!r} used as operation name", lineno, 1)
    try:
        src_t, tgt_t = parse_type(src), parse_type(tgt)
    except SpecSyntaxError as exc:
        raise SpecSyntaxError(str(exc), lineno, 1) from None
    return name, src_t, tgt_t, deco


def _parse_exceptions(entries):
    items = []
    for lineno, text in entries:
        for part in text.split(","):
            if not part.strip():
                continue
            idx, sep, ty = part.partition(":")
            if not sep:
                raise SpecSyntaxError(f"malformed exception declaration {part!r}", lineno, 1)
            items.append((idx.strip(), parse_type(ty.strip())))
    return tuple(items)


def _parse_types(entries):
    names = []
    for lineno, text in entries:
        for part in text.split(","):
            part = part.strip()
            if part:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*|\d+", part):
                    raise SpecSyntaxError(f"bad type name {part!r}", lineno, 1)
                names.append(part)
    return tuple(names)


def parse_spec(text: str, extra_ops=()) -> DecoratedSpec:
    """Parse a decorated ``.dexc`` specification.

    The axiom line ``canonical`` stands for all canonical exception axioms.
    """
    from .syntax import canonical_axioms

    sec = _sections(text)
    logic = " ".join(t for _, t in sec["logic"]) or "decorated"
    if logic != "decorated":
        raise SpecSyntaxError(f"expected a decorated specification, found logic {logic!r}")
    types = _parse_types(sec["types"])
    params = _parse_exceptions(sec["exceptions"])
    indices = tuple(i for i, _ in params)
    roles = {tag_name(i): ("tag", i) for i in indices}
    roles.update({untag_name(i): ("untag", i) for i in indices})
    forced = {"tag": Deco.PPG, "untag": Deco.CTC}
    ops = []
    for lineno, text_ in sec["ops"]:
        name, src, tgt, deco = _parse_op(lineno, text_)
        role, index = roles.get(name, (None, None))
        try:
            d = Deco.parse(deco) if deco else None
        except ValueError as exc:
            raise SpecSyntaxError(str(exc), lineno, 1) from None
        if role is not None:
            if d is not None and d is not forced[role]:
                raise DecorationAnnotationConflict(
                    f"{name} is a core {role} operation and must be {forced[role]}", lineno, 1)
            d = forced[role]
        try:
            ops.append(Gen(name, src, tgt, d or Deco.PURE, role, index))
        except TypeError as exc:
            raise SpecSyntaxError(str(exc), lineno, 1) from None
    ops.extend(extra_ops)
    spec = DecoratedSpec(types, tuple(ops), indices, params, ())
    axioms = []
    for lineno, text_ in sec["axioms"]:
        if text_ == "canonical":
            axioms.extend(canonical_axioms(spec))
        else:
            axioms.append(parse_equation(text_, spec, line=lineno))
    return spec.with_axioms(*axioms)


def print_spec(spec: DecoratedSpec, canonical_shorthand: bool = False) -> str:
    from .syntax import canonical_axioms

    lines = ["logic: decorated", f"types: {', '.join(spec.types)}", "ops:"]
    lines += [f"  {print_gen(g)}" for g in spec.ops]
    lines.append("exceptions:")
    lines += [f"  {i} : {p}" for i, p in spec.params]
    lines.append("axioms:")
    axioms = list(spec.axioms)
    canon = list(canonical_axioms(spec)) if spec.indices else []
    if canonical_shorthand and canon and axioms[:len(canon)] == canon:
        lines.append("  canonical")
        axioms = axioms[len(canon):]
    lines += [f"  {print_equation(a)}" for a in axioms]
    return "\n".join(lines) + "\n"


def print_explicit_spec(spec) -> str:
    lines = ["logic: explicit", f"types: {', '.join(spec.types)}", "ops:"]
    lines += [f"  {print_gen(g)}" for g in spec.ops]
    lines.append("exceptions:")
    lines += [f"  {i} : {p}" for i, p in spec.params]
    lines.append("axioms:")
    lines += [f"  {print_equation(a)}" for a in spec.axioms]
    return "\n".join(lines) + "\n"


def parse_explicit_spec(text: str):
    from .expand import ExplicitSpec

    sec = _sections(text)
    logic = " ".join(t for _, t in sec["logic"])
    if logic != "explicit":
        raise SpecSyntaxError(f"expected an explicit specification, found logic {logic!r}")
    types = _parse_types(sec["types"])
    params = _parse_exceptions(sec["exceptions"])
    indices = tuple(i for i, _ in params)
    roles = {tag_name(i): ("tag", i) for i in indices}
    roles.update({untag_name(i): ("untag", i) for i in indices})
    ops = []
    for lineno, text_ in sec["ops"]:
        name, src, tgt, deco = _parse_op(lineno, text_)
        if deco:
            raise DecorationAnnotationConflict("explicit operations carry no decoration", lineno, 1)
        role, index = roles.get(name, (None, None))
        ops.append(Gen(name, src, tgt, None, role, index))
    gens = {g.name: g for g in ops}
    axioms = tuple(parse_equation(t, gens, explicit=True, line=n) for n, t in sec["axioms"])
    return ExplicitSpec(types, tuple(ops), indices, params, axioms)


# ---------------------------------------------------------------------------
# Judgments and .dproof derivations
#
#   spec: exceptions.dexc              (optional; resolved by the caller)
#   assume g : X -> Y [ppg]            (hypothesis generators)
#   proof:
#   <rule> {m := value; ...} |- <judgment>
#     <rule> ... |- <judgment>         (two spaces per level)
#
# Judgments: ``type X``, ``decl T [ppg]``, or an equation.  A family value
# is written ``[t1, t2]``.


def print_judgment(j) -> str:
    from .kernel import Decl, TypeJ
    if isinstance(j, TypeJ):
        return f"type {j.ty}"
    if isinstance(j, Decl):
        return f"decl {print_term(j.term)} [{j.deco}]"
    if isinstance(j, Equation):
        return print_equation(j)
    raise TypeError(f"not a judgment: {j!r}")


_DECL = re.compile(r"^decl\s+(.*)\s+\[(pure|ppg|ctc)\]$")


def parse_judgment(text: str, spec, line: int = 0):
    from .kernel import Decl, TypeJ
    text = text.strip()
    if text.startswith("type "):
        try:
            return TypeJ(parse_type(text[5:].strip()))
        except SpecSyntaxError as exc:
            raise SpecSyntaxError(str(exc), line, 1) from None
    m = _DECL.match(text)
    if m:
        return Decl(parse_term(m.group(1), spec, line=line), Deco.parse(m.group(2)))
    return parse_equation(text, spec, line=line)


def _print_value(kind: str, v) -> str:
    if kind == "term":
        return print_term(v)
    if kind == "terms":
        return "[" + ", ".join(print_term(u) for u in v) + "]"
    if kind == "type":
        return print_type(v)
    if kind == "equation":
        return print_equation(v)
    return str(v)


def _split_top(text: str, sep: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _parse_value(kind: str, text: str, spec, line: int):
    if kind == "term":
        return parse_term(text, spec, line=line)
    if kind == "terms":
        inner = text.strip()
        if not (inner.startswith("[") and inner.endswith("]")):
            raise SpecSyntaxError(f"a family is written [t1, t2, ...], not {text!r}", line, 1)
        return tuple(parse_term(p, spec, line=line) for p in _split_top(inner[1:-1], ","))
    if kind == "type":
        return parse_type(text)
    if kind == "index":
        return text.strip()
    if kind == "deco":
        return Deco.parse(text.strip())
    if kind == "equation":
        return parse_equation(text, spec, line=line)
    raise SpecSyntaxError(f"unknown metavariable kind {kind}", line, 1)


def print_derivation(d, *, spec_name: Optional[str] = None, assumptions=()) -> str:
    from .kernel import RULES
    lines = []
    if spec_name:
        lines.append(f"spec: {spec_name}")
    lines += [f"assume {print_gen(g)}" for g in assumptions]
    lines.append("proof:")

    def walk(n, depth):
        kinds = dict(RULES[n.rule].meta) if n.rule in RULES else {}
        subst = [(k, v) for k, v in n.subst if not (n.rule == "axiom" and k == "eq")]
        s = "; ".join(f"{k} := {_print_value(kinds.get(k, 'term'), v)}" for k, v in subst)
        head = f"{n.rule} {{{s}}}" if s else n.rule
        lines.append(f"{'  ' * depth}{head} |- {print_judgment(n.conclusion)}")
        for p in n.premises:
            walk(p, depth + 1)

    walk(d, 0)
    return "\n".join(lines) + "\n"


@dataclass
class ProofFile:
    spec_name: Optional[str]
    assumptions: tuple
    derivation: object
    context: DecoratedSpec


_ASSUME = re.compile(r"^assume\s+(.*)$")


def parse_proof(text: str, spec: Optional[DecoratedSpec] = None, *, load_spec=None) -> ProofFile:
    """Parse a ``.dproof`` file.  ``spec`` is the context; if omitted the
    ``spec:`` header is resolved with ``load_spec(name)``."""
    from .kernel import RULES, Derivation, _ordered

    spec_name, assumptions, rows = None, [], []
    in_proof = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        if not in_proof:
            stripped = line.strip()
            if stripped.startswith("spec:"):
                spec_name = stripped[5:].strip()
            elif stripped == "proof:":
                in_proof = True
            elif _ASSUME.match(stripped):
                name, src, tgt, deco = _parse_op(lineno, _ASSUME.match(stripped).group(1))
                assumptions.append((name, src, tgt, Deco.parse(deco or "pure")))
            else:
                raise SpecSyntaxError(f"unexpected header line {stripped!r}", lineno, 1)
            continue
        indent = len(line) - len(line.lstrip(" "))
        if indent % 2:
            raise SpecSyntaxError("indentation must be a multiple of two spaces", lineno, 1)
        rows.append((lineno, indent // 2, line.strip()))
    if spec is None:
        if spec_name is None or load_spec is None:
            raise SpecSyntaxError("proof has no specification context")
        spec = load_spec(spec_name)
    gens = tuple(Gen(n, s, t, d) for n, s, t, d in assumptions)
    ctx = spec.with_ops(*gens) if gens else spec
    if not rows:
        raise SpecSyntaxError("empty proof")

    def parse_row(lineno, text_):
        head, sep, judg = text_.partition("|-")
        if not sep:
            raise SpecSyntaxError("expected '|-' before the conclusion", lineno, 1)
        head = head.strip()
        rule, _, rest = head.partition(" ")
        rest = rest.strip()
        if rule not in RULES:
            raise SpecSyntaxError(f"unknown rule {rule!r}", lineno, 1)
        kinds = dict(RULES[rule].meta)
        subst = {}
        if rest:
            if not (rest.startswith("{") and rest.endswith("}")):
                raise SpecSyntaxError("substitution must be written {m := value; ...}", lineno, 1)
            for item in _split_top(rest[1:-1], ";"):
                name, colon, value = item.partition(":=")
                name = name.strip()
                if not colon or name not in kinds:
                    raise SpecSyntaxError(f"bad substitution entry {item!r} for {rule}", lineno, 1)
                subst[name] = _parse_value(kinds[name], value, ctx, lineno)
        conclusion = parse_judgment(judg, ctx, lineno)
        if rule == "axiom" and "eq" not in subst:
            subst["eq"] = conclusion
        return rule, subst, conclusion

    pos = 0

    def build(depth):
        nonlocal pos
        lineno, d, text_ = rows[pos]
        if d != depth:
            raise SpecSyntaxError(f"expected depth {depth}, found {d}", lineno, 1)
        pos += 1
        rule, subst, concl = parse_row(lineno, text_)
        kids = []
        while pos < len(rows) and rows[pos][1] > depth:
            kids.append(build(depth + 1))
        return Derivation(rule, _ordered(rule, subst), concl, tuple(kids))

    root = build(0)
    if pos != len(rows):
        raise SpecSyntaxError("more than one root in proof", rows[pos][0], 1)
    return ProofFile(spec_name, gens, root, ctx)


# ---------------------------------------------------------------------------
# .dmodel finite models
#
#   carriers:
#     Nat = n0, n1
#   exceptions:                 (optional; default: from the spec)
#     1 : Nat
#   ops:
#     f: x0 -> n1
#     g: n0 -> throws 1(n0)
#     h: throws 1(n0) -> n1     (catchers list exceptional inputs too)
#
# Coproduct atoms are written inl(a) / inr(b).


def print_value(v) -> str:
    return str(v)


def _parse_atom(text: str, line: int):
    text = text.strip()
    m = re.fullmatch(r"(inl|inr)\((.*)\)", text)
    if m:
        return ("L" if m.group(1) == "inl" else "R", _parse_atom(m.group(2), line))
    if not re.fullmatch(r"[A-Za-z0-9_'*]+", text):
        raise SpecSyntaxError(f"bad value atom {text!r}", line, 1)
    return text


def parse_value(text: str, line: int = 0):
    from .semantics import Exceptional, Ordinary
    text = text.strip()
    m = re.fullmatch(r"throws\s+(\w+)\((.*)\)", text)
    if m:
        return Exceptional(m.group(1), _parse_atom(m.group(2), line))
    return Ordinary(_parse_atom(text, line))


def print_model(m) -> str:
    lines = ["carriers:"]
    lines += [f"  {k} = {', '.join(map(str, v))}" for k, v in m.carriers.items()]
    lines.append("exceptions:")
    lines += [f"  {i} : {p}" for i, p in m.params.items()]
    lines.append("ops:")
    for name, table in m.tables.items():
        for k, v in table.items():
            lines.append(f"  {name}: {print_value(k)} -> {print_value(v)}")
    return "\n".join(lines) + "\n"


def parse_model(text: str, spec: Optional[DecoratedSpec] = None):
    """Parse a ``.dmodel`` file into a :class:`FiniteModel`."""
    from .semantics import FiniteModel

    carriers, params, tables = {}, {}, {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).strip()
        if not line:
            continue
        if line in ("carriers:", "exceptions:", "ops:"):
            section = line[:-1]
            continue
        if section == "carriers":
            name, sep, rest = line.partition("=")
            if not sep:
                raise SpecSyntaxError("carrier lines look like 'T = a, b'", lineno, 1)
            carriers[name.strip()] = tuple(a.strip() for a in rest.split(",") if a.strip())
        elif section == "exceptions":
            idx, sep, ty = line.partition(":")
            if not sep:
                raise SpecSyntaxError("exception lines look like '1 : T'", lineno, 1)
            params[idx.strip()] = parse_type(ty.strip())
        elif section == "ops":
            name, sep, rest = line.partition(":")
            lhs, arrow, rhs = rest.partition("->")
            if not sep or not arrow:
                raise SpecSyntaxError("table lines look like 'f: a -> b'", lineno, 1)
            tables.setdefault(name.strip(), {})[parse_value(lhs, lineno)] = parse_value(rhs, lineno)
        else:
            raise SpecSyntaxError(f"content outside a section: {line!r}", lineno, 1)
    if not params and spec is not None:
        params = dict(spec.params)
    if spec is not None:
        for n in spec.types:
            if n != "1" and n not in carriers:
                raise UnknownIdentifier(f"model has no carrier for type {n}")
        known = spec.generators()
        for n in tables:
            if n not in known:
                raise UnknownIdentifier(f"model interprets undeclared operation {n}")
    return FiniteModel(carriers, params, tables)
