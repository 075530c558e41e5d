"""Weak and strong equations in finite models.

Searches random models for one where an equation holds weakly but not
strongly, then shows the exceptional input that separates them.

    python3 demos/weak_versus_strong.py
"""

from decexc.data import load_spec
from decexc.formats import print_equation
from decexc.semantics import counterexample, models_for
from decexc.syntax import Comp, Id, ZERO, strong, weak

spec = load_spec()
for i in spec.indices:
    k = Comp(spec.untag(i), spec.tag(i))
    w, s = weak(k, Id(spec.param(i))), strong(k, Id(spec.param(i)))
    for m in models_for(spec, 20, seed=1):
        if counterexample(w, m) is None and (cx := counterexample(s, m)) is not None:
            print(print_equation(w), "holds;", print_equation(s), "fails")
            print(f"  in {m.describe()}: input {cx[0]} gives {cx[1]} vs {cx[2]}")
            break

eq = strong(Comp(spec.tag("1"), spec.untag("1")), Id(ZERO))
ok = all(counterexample(eq, m) is None for m in models_for(spec, 50, seed=2))
print(print_equation(eq), "holds in 50 random models:", ok)
