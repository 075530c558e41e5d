"""The reproduction suite: every executable check, one item each.

Each ``item_*`` function returns an :class:`Item`; :func:`run_suite` runs
them in a fixed order.  The command line and the acceptance tests both use
this module.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from .syntax import Base, Deco, Gen, decorated_spec, strong, weak

PROOF_SCRIPTS_LEMMA = ("lemma_coprod_cotu_part1", "lemma_coprod_cotu_part2")
PROOF_SCRIPT_CATCH_RAISE = "lemma_catch_raise"


@dataclass
class Item:
    id: str
    anchor: str
    ok: bool
    detail: str = ""
    witness: Optional[dict] = None
    seconds: float = 0.0
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.ok else "fail"
        d.pop("ok")
        d["seconds"] = round(self.seconds, 3)
        return d

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.id}: {self.anchor} ({self.detail})"


def _timed(fn: Callable[[], Item]) -> Item:
    t = time.perf_counter()
    item = fn()
    item.seconds = time.perf_counter() - t
    return item


# ---------------------------------------------------------------------------
# Proof scripts


def item_scripts(names=None, item_id: str = "proofs") -> Item:
    """Parse and check shipped proof scripts (all of them by default)."""
    from .data import proof_names
    from .kernel import check_derivation
    from .proofs import load_script
    names = list(names) if names else [n[:-len(".dproof")] for n in proof_names()]
    failed, nodes = [], 0
    for name in names:
        pf = load_script(f"{name}.dproof")
        v = check_derivation(pf.derivation, pf.context)
        nodes += len(v.nodes)
        if not v.ok:
            bad = v.first_failure()
            failed.append({"script": name, **bad.as_dict()})
    return Item(item_id, "shipped derivations check in the kernel", not failed,
                f"{len(names)} scripts, {nodes} nodes", failed[0] if failed else None,
                stats={"scripts": names, "nodes": nodes})


def _untag_equations(spec):
    from .proofs import sum_left, sum_right
    from .syntax import ZERO, Comp, Id
    out = []
    for i in spec.indices:
        out.append((f"untag-tag {i}", strong(Comp(spec.tag(i), spec.untag(i)), Id(ZERO))))
    for i, j in itertools.permutations(spec.indices, 2):
        out.append((f"untag-untag {i},{j}", strong(sum_left(spec, i, j), sum_right(spec, i, j))))
    return out


def item_reconstructed(sizes=range(4), index_counts=(1, 2, 3)) -> Item:
    """Both reconstructed lemmas: kernel check of the scripts, plus the
    oracle over every battery model, for every index (pair)."""
    from .semantics import battery, counterexample
    scripts = item_scripts(("lemma_untag_tag", "lemma_untag_untag"), "reconstructed")
    models = checked = 0
    for m in battery(("A", "B"), sizes, index_counts):
        models += 1
        spec = decorated_spec(("A", "B"), (), dict(m.params))
        for name, eq in _untag_equations(spec):
            checked += 1
            cx = counterexample(eq, m)
            if cx is not None:
                return Item("reconstructed", "untag-tag and untag-untag", False,
                            f"oracle fails for {name}",
                            {"model": m.describe(), "input": str(cx[0]), "lhs": str(cx[1]),
                             "rhs": str(cx[2])})
    ok = scripts.ok
    return Item("reconstructed", "untag-tag and untag-untag", ok,
                f"kernel: {scripts.detail}{'' if ok else ' FAILED'}; oracle: {checked} "
                f"equations over {models} models", scripts.witness,
                stats={"models": models, "equations": checked, "kernel_ok": scripts.ok})


# ---------------------------------------------------------------------------
# Expansion


def item_rules() -> Item:
    from .expand import RULE_BATTERY_VERSION, expand_all_rules
    reps = expand_all_rules()
    bad = [r for r in reps if not r.ok]
    methods = {r.rule: r.method for r in reps}
    counts = {m: sum(1 for v in methods.values() if v == m) for m in sorted(set(methods.values()))}
    families = sorted({r.family for r in reps})
    return Item("rules", "expansion maps every rule to a valid explicit inference", not bad,
                f"{len(reps)} rules in families {','.join(families)}; {counts}",
                {"rule": bad[0].rule, "witness": bad[0].witness} if bad else None,
                stats={"methods": methods, "battery": RULE_BATTERY_VERSION})


def item_spec_expansion(count: int = 60, seed: int = 0, max_indices: int = 4) -> Item:
    from .expand import expand_spec, explicit_spec
    from .generate import random_instance
    rng = random.Random(seed)
    for k in range(count):
        types, ops, params = random_instance(rng, max_indices)
        lhs = expand_spec(decorated_spec(types, ops, params))
        rhs = explicit_spec(types, ops, params)
        if lhs != rhs:
            return Item("spec-expansion", "expanded decorated spec equals the explicit spec",
                        False, f"instance {k} differs", {"types": types, "params": str(params)})
    return Item("spec-expansion", "expanded decorated spec equals the explicit spec", True,
                f"{count} instances, |I| <= {max_indices}")


def item_commutation(terms_per_config: int = 150, max_depth: int = 5, sizes=range(4)) -> Item:
    """Decorated evaluation against explicit evaluation of the expansion,
    for random terms and for the derived raising/handling operations."""
    from .formats import print_term
    from .generate import random_terms, term_battery
    from .semantics import commutation_witness, theorem_444_check
    cache: dict = {}
    pairs = ops = 0
    battery = term_battery(sizes)
    for spec, m in battery:
        key = tuple(sorted((i, str(p)) for i, p in m.params.items()))
        if key not in cache:
            cache[key] = random_terms(spec, terms_per_config, max_depth, seed=len(cache))
        for t in cache[key]:
            pairs += 1
            w = commutation_witness(t, m)
            if w is not None:
                return Item("commutation", "decorated evaluation = explicit evaluation of expansion",
                            False, "random term", {"term": print_term(t), "model": m.describe(),
                                                   "input": str(w[0]), "decorated": str(w[1]),
                                                   "explicit": str(w[2])})
        rep = theorem_444_check(spec, m)
        ops += rep.checked
        if not rep.ok:
            return Item("commutation", "decorated evaluation = explicit evaluation of expansion",
                        False, "derived operation", rep.witness)
    return Item("commutation", "decorated evaluation = explicit evaluation of expansion", True,
                f"{pairs} (term, model) pairs up to depth {max_depth}, {ops} derived operations, "
                f"{len(battery)} models")


# ---------------------------------------------------------------------------
# Handling


def item_handler(max_size: int = 2, n_max: int = 3) -> Item:
    from .handler import differential_handler_test, handler_battery
    rep = differential_handler_test(handler_battery(max_size), n_max)
    ok = rep.ok and rep.covered == rep.expected_coverage
    return Item("handler", "leftmost matching clause, uncaught exceptions propagate", ok, str(rep),
                rep.divergence, stats={"models": rep.models, "inputs": rep.inputs,
                                       "leaves": rep.cases, "covered": rep.covered})


# ---------------------------------------------------------------------------
# Soundness


def item_soundness(models_per_script: int = 100, seed: int = 0) -> Item:
    """Every equation in every shipped derivation holds in random models; the
    weak/strong separation is witnessed."""
    from .data import load_spec, proof_names
    from .kernel import equations_of
    from .formats import print_equation
    from .proofs import load_script
    from .semantics import counterexample, models_for
    checked = 0
    for fname in proof_names():
        pf = load_script(fname)
        eqs = list(dict.fromkeys(equations_of(pf.derivation)))
        for m in models_for(pf.context, models_per_script, seed):
            for eq in eqs:
                checked += 1
                cx = counterexample(eq, m)
                if cx is not None:
                    return Item("soundness", "derivable equations hold in models", False,
                                fname, {"equation": print_equation(eq), "model": m.describe(),
                                        "input": str(cx[0])})
    spec = load_spec()
    i = spec.indices[0]
    from .syntax import Comp, Id
    lhs, rhs = Comp(spec.untag(i), spec.tag(i)), Id(spec.param(i))
    sep = None
    for m in models_for(spec, 20, seed):
        if counterexample(weak(lhs, rhs), m) is None:
            cx = counterexample(strong(lhs, rhs), m)
            if cx is not None:
                sep = {"model": m.describe(), "input": str(cx[0]), "lhs": str(cx[1]),
                       "rhs": str(cx[2])}
                break
    return Item("soundness", "derivable equations hold in models", sep is not None,
                f"{checked} equation checks; weak-not-strong witness "
                f"{'found' if sep else 'MISSING'}", sep)


# ---------------------------------------------------------------------------
# Negative controls


def item_negative() -> Item:
    from .data import load_spec
    from .handler import EmptyClauseList, build_try_catch
    from .kernel import DecorationSideConditionViolated, KernelError, apply_rule, Decl
    from .semantics import corrupt_untag, intended_model, theorem_444_check
    from .syntax import Comp, Id
    spec = load_spec()
    x, y = Base("X"), Base("Y")
    f = Gen("f", x, y, Deco.PPG)
    g1, g2 = Gen("g1", y, y, Deco.CTC), Gen("g2", y, y, Deco.CTC)
    ctx = spec.with_ops(f, g1, g2).with_axioms(weak(g1, g2))
    results = {}
    try:
        apply_rule("b11", {"f": f, "g1": g1, "g2": g2}, [Decl(f, Deco.PPG), weak(g1, g2)], ctx)
        results["weak substitution with a propagator"] = "accepted"
    except DecorationSideConditionViolated:
        results["weak substitution with a propagator"] = "rejected"
    except KernelError as e:
        results["weak substitution with a propagator"] = f"other error {type(e).__name__}"
    try:
        build_try_catch(f, [], spec.with_ops(f))
        results["empty clause list"] = "accepted"
    except EmptyClauseList:
        results["empty clause list"] = "rejected"
    m = intended_model({"X": ["x0"], "Y": ["y0"], "Nat": ["n0", "n1"], "Bool": ["b0", "b1"]},
                       dict(spec.params))
    pure = spec.pure_ops()
    from .semantics import random_table
    rng = random.Random(0)
    m = m.with_tables(**{g.name: random_table(m, g, rng) for g in pure})
    clean = theorem_444_check(spec, m)
    bad = theorem_444_check(spec, corrupt_untag(m, spec.indices[0]))
    results["corrupted untag"] = "fails" if not bad.ok else "passes"
    ok = (results["weak substitution with a propagator"] == "rejected"
          and results["empty clause list"] == "rejected"
          and clean.ok and not bad.ok and bad.witness is not None)
    return Item("negative", "negative controls are rejected", ok,
                "; ".join(f"{k}: {v}" for k, v in results.items()), bad.witness)


# ---------------------------------------------------------------------------


def run_suite(battery: str = "full") -> list:
    """All items in a fixed order.  ``battery="small"`` shrinks the model
    batteries (quick smoke run); ``"full"`` is the acceptance scale."""
    full = battery == "full"
    items = [
        lambda: item_scripts(),
        lambda: item_reconstructed(range(4) if full else range(3), (1, 2, 3) if full else (1, 2)),
        item_rules,
        lambda: item_spec_expansion(60 if full else 20),
        lambda: item_commutation(150 if full else 30, 5, range(4) if full else range(3)),
        lambda: item_handler(2 if full else 1),
        lambda: item_soundness(100 if full else 20),
        item_negative,
    ]
    return [_timed(fn) for fn in items]
