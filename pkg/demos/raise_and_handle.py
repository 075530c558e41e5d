"""Raising and handling exceptions, decorated and explicit.

Builds a few try/catch terms over the shipped specification, prints both
forms, and runs them in the shipped finite model next to the operational
reference.

    python3 demos/raise_and_handle.py
"""

from decexc.data import load_spec, read_text
from decexc.expand import expand_term
from decexc.formats import parse_model, print_term
from decexc.handler import build_throw, build_try_catch, java_reference_eval
from decexc.semantics import Exceptional, Ordinary, evaluate
from decexc.syntax import Base, Deco, Gen

spec = load_spec()
nat = Base("Nat")

# A propagator that throws 1 on odd numbers and maps evens to themselves.
check = Gen("check", nat, nat, Deco.PPG)
ctx = spec.with_ops(check)
model = parse_model(read_text("models", "exceptions.dmodel"), ctx).with_tables(check={
    Ordinary("n0"): Ordinary("n0"),
    Ordinary("n1"): Exceptional("1", "n1"),
    Ordinary("n2"): Ordinary("n2"),
})

succ = spec.op("succ")
throw2 = build_throw("2", nat, ctx)           # raises 2 with a Bool payload

print("throw{2, Nat}")
print("  decorated:", print_term(throw2), f"[{throw2.deco}]")
print("  explicit: ", print_term(expand_term(throw2)))
print()
t = build_try_catch(check, [("1", succ)], ctx)
print("try check catch(1 => succ)")
print("  decorated:", print_term(t), f"[{t.deco}]")
print("  explicit: ", print_term(expand_term(t)))
print()
print("  input        handled     reference")
for v in model.values(nat) + [Exceptional("2", "tt")]:
    ref = java_reference_eval(lambda x: evaluate(check, model, x),
                              [("1", lambda a: evaluate(succ, model, Ordinary(a)))], v) \
        if isinstance(v, Ordinary) else v
    print(f"  {str(v):12} {str(evaluate(t, model, v)):11} {ref}")
