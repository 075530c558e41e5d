"""Command line: check proofs, expand specifications, evaluate, compare, demo.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage, input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .formats import (  # noqa: F401  (re-exported parsers)
    SpecSyntaxError, parse_equation, parse_model, parse_proof, parse_spec, parse_term,
    parse_value, print_equation, print_explicit_spec, print_term,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input resolution


def _read(path: str, *shipped_dirs: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    from .data import read_text
    for d in shipped_dirs:
        try:
            return read_text(*(d.split("/") if d else []), p.name)
        except (FileNotFoundError, OSError):
            continue
    raise UsageError(f"no such file: {path}")


def load_spec_arg(path: Optional[str], relative_to: Optional[Path] = None):
    if path is None:
        raise UsageError("a specification is required (--spec)")
    if relative_to is not None and (relative_to / path).exists():
        path = str(relative_to / path)
    return parse_spec(_read(path, ""))


def load_model_arg(path: str, spec):
    return parse_model(_read(path, "models"), spec)


# ---------------------------------------------------------------------------
# Output


def _emit(args, report: dict, human: list) -> None:
    if args.format == "structured":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args) -> int:
    from .kernel import check_derivation
    spec_path = args.spec or (args.files[0] if len(args.files) == 2 else None)
    proof_path = args.proof or (args.files[-1] if args.files else None)
    if proof_path is None:
        raise UsageError("check needs a proof file")
    text = _read(proof_path, "proofs")
    base = Path(proof_path).parent if Path(proof_path).exists() else None
    if spec_path is not None:
        pf = parse_proof(text, load_spec_arg(spec_path))
    else:
        pf = parse_proof(text, load_spec=lambda name: load_spec_arg(name, base))
    v = check_derivation(pf.derivation, pf.context)
    from .formats import print_judgment
    report = {"command": "check", "proof": proof_path, "verdict": "pass" if v.ok else "fail",
              "conclusion": print_judgment(v.conclusion),
              "nodes": [n.as_dict() for n in v.nodes]}
    human = [f"{'accepted' if v.ok else 'rejected'}: {print_judgment(v.conclusion)} "
             f"({len(v.nodes)} nodes)"]
    human += [f"  node {n.path} [{n.rule}]: {n.verdict}: {n.message}" for n in v.failures]
    _emit(args, report, human)
    return EXIT_OK if v.ok else EXIT_FAIL


def cmd_expand(args) -> int:
    from .expand import expand_all_rules, expand_spec
    if args.rules:
        reps = expand_all_rules(args.method)
        ok = all(r.ok for r in reps)
        report = {"command": "expand-rules", "verdict": "pass" if ok else "fail",
                  "rules": [{"rule": r.rule, "family": r.family, "verdict":
                             "pass" if r.ok else "fail", "method": r.method,
                             "models": r.models, "leaves": r.leaves, "witness": r.witness}
                            for r in reps]}
        human = [f"{r.rule:5} ({r.family}) {'pass' if r.ok else 'FAIL'} {r.method}"
                 + (f" [{r.models} models, {r.leaves} leaves]" if r.models else "")
                 for r in reps]
        _emit(args, report, human)
        return EXIT_OK if ok else EXIT_FAIL
    spec = load_spec_arg(args.spec or (args.files[0] if args.files else None))
    text = print_explicit_spec(expand_spec(spec))
    if args.format == "structured":
        print(json.dumps({"command": "expand", "explicit_spec": text}, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_eval(args) -> int:
    from .semantics import evaluate
    spec = load_spec_arg(args.spec)
    if not args.model:
        raise UsageError("eval needs --model")
    m = load_model_arg(args.model, spec)
    t = parse_term(args.term, spec)
    if args.value:
        inputs = [parse_value(args.value)]
    else:
        from .syntax import plus_e
        inputs = m.values(plus_e(t.src))
    rows = [(str(v), str(evaluate(t, m, v))) for v in inputs]
    report = {"command": "eval", "term": print_term(t), "decoration": str(t.deco),
              "results": [{"input": a, "output": b} for a, b in rows]}
    human = [f"{print_term(t)} [{t.deco}]"] + [f"  {a} -> {b}" for a, b in rows]
    _emit(args, report, human)
    return EXIT_OK


def cmd_equiv(args) -> int:
    from .semantics import counterexample, models_for
    spec = load_spec_arg(args.spec)
    eq = parse_equation(args.equation, spec)
    if args.model:
        models = [load_model_arg(args.model, spec)]
    else:
        models = models_for(spec, 100 if args.battery == "full" else 20, seed=0)
    witness = None
    for m in models:
        cx = counterexample(eq, m)
        if cx is not None:
            witness = {"model": m.describe(), "input": str(cx[0]), "lhs": str(cx[1]),
                       "rhs": str(cx[2])}
            break
    report = {"command": "equiv", "equation": print_equation(eq), "models": len(models),
              "verdict": "pass" if witness is None else "fail", "witness": witness}
    if witness is None:
        human = [f"holds: {print_equation(eq)} in {len(models)} model(s)"]
    else:
        human = [f"fails: {print_equation(eq)}",
                 f"  witness {witness['input']}: lhs {witness['lhs']}, rhs {witness['rhs']}",
                 f"  in {witness['model']}"]
    _emit(args, report, human)
    return EXIT_OK if witness is None else EXIT_FAIL


def _demo_exceptions(args) -> int:
    from .data import load_spec
    from .expand import expand_term
    from .handler import build_try_catch, differential_handler_test, handler_battery
    from .syntax import Base, Deco, Gen
    spec = load_spec()
    y = Base("Y")
    f = Gen("f", Base("X"), y, Deco.PPG)
    g, h = Gen("g", spec.param("1"), y, Deco.PPG), Gen("h", spec.param("2"), y, Deco.PPG)
    ctx = spec.with_ops(f, g, h)
    one = build_try_catch(f, [("1", g)], ctx)
    two = build_try_catch(f, [("1", g), ("2", h)], ctx)
    rep = differential_handler_test(handler_battery(2 if args.battery == "full" else 1))
    lines = [
        "try f catch(1 => g)",
        f"  decorated: {print_term(one)}",
        f"  explicit:  {print_term(expand_term(one))}",
        "try f catch(1 => g | 2 => h)",
        f"  decorated: {print_term(two)}",
        f"  explicit:  {print_term(expand_term(two))}",
        f"differential test against the Java-style reference: {rep}",
    ]
    report = {"command": "demo", "name": "exceptions",
              "unfoldings": {"n=1": print_term(one), "n=2": print_term(two)},
              "differential": {"verdict": "pass" if rep.ok else "fail", "summary": str(rep),
                               "divergence": rep.divergence}}
    _emit(args, report, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _demo_paper(args) -> int:
    from .suite import run_suite
    items = run_suite(args.battery)
    ok = all(i.ok for i in items)
    report = {"command": "demo", "name": "paper", "battery": args.battery,
              "verdict": "pass" if ok else "fail",
              "items": [{k: v for k, v in i.as_dict().items() if k != "seconds"} for i in items]}
    human = [i.line() for i in items]
    human.append(f"{'all items pass' if ok else 'SOME ITEMS FAIL'} ({len(items)} items)")
    _emit(args, report, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_demo(args) -> int:
    return {"exceptions": _demo_exceptions, "paper": _demo_paper}[args.name](args)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="decorated specification (.dexc)")
    common.add_argument("--model", help="finite model (.dmodel)")
    common.add_argument("--proof", help="derivation (.dproof)")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--battery", choices=("small", "full"), default="full")

    p = argparse.ArgumentParser(prog="decexc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a derivation")
    c.add_argument("files", nargs="*", metavar="FILE", help="[SPEC] PROOF")
    c.set_defaults(run=cmd_check)

    e = sub.add_parser("expand", parents=[common], help="expand a specification or the rules")
    e.add_argument("files", nargs="*", metavar="SPEC")
    e.add_argument("--rules", action="store_true", help="expand and discharge every rule")
    e.add_argument("--method", choices=("auto", "syntactic", "semantic"), default="auto")
    e.set_defaults(run=cmd_expand)

    v = sub.add_parser("eval", parents=[common], help="evaluate a term in a model")
    v.add_argument("term")
    v.add_argument("value", nargs="?", help="input value (default: all inputs)")
    v.set_defaults(run=cmd_eval)

    q = sub.add_parser("equiv", parents=[common], help="decide an equation in models")
    q.add_argument("equation")
    q.set_defaults(run=cmd_equiv)

    d = sub.add_parser("demo", parents=[common], help="run a demonstration")
    d.add_argument("name", choices=("exceptions", "paper"))
    d.set_defaults(run=cmd_demo)
    return p


def main(argv=None) -> int:
    from .formats import DecorationAnnotationConflict, UnknownIdentifier
    from .handler import EmptyClauseList
    from .syntax import TermTypeError
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (UsageError, SpecSyntaxError, UnknownIdentifier, DecorationAnnotationConflict,
            EmptyClauseList, TermTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
