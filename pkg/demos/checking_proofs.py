"""Checking derivations: a small proof by hand, then the shipped library.

    python3 demos/checking_proofs.py
"""

import dataclasses

from decexc.data import load_spec
from decexc.formats import print_derivation, print_judgment
from decexc.kernel import check_derivation
from decexc.proofs import Prover, derived_rule_library
from decexc.syntax import Base, Comp, Deco, Gen, Id

spec = load_spec()
pv = Prover(spec)

# untag after tag is weakly the identity (an axiom), and the composite is a catcher.
nat = Base("Nat")
k = Comp(spec.untag("1"), spec.tag("1"))
ax = pv.axiom(next(a for a in spec.axioms if a.lhs == k))
print(print_derivation(ax))
print(print_derivation(pv.ctc(k)))

# A weak fact about a propagator becomes strong (the ppg weak-to-strong rule).
f = Gen("f", nat, nat, Deco.PPG)
ctx = spec.with_ops(f)
pv = Prover(ctx)
d = pv.strengthen(pv.weak(pv.refl(f)))
print(print_derivation(d))
print("checks:", check_derivation(d, ctx).ok)

# Tamper with one node: the kernel reports exactly that node.
bad = dataclasses.replace(d, premises=(dataclasses.replace(d.premises[0], rule="a7"),) + d.premises[1:])
for n in check_derivation(bad, ctx).failures:
    print(f"rejected node {n.path} [{n.rule}]: {n.message}")

print()
for name, s in derived_rule_library().items():
    status = "ok " if s.verdict.ok else "BAD"
    print(f"{status} {name:26} {len(s.verdict.nodes):5} nodes  {print_judgment(s.verdict.conclusion)}")
