import pytest

from decexc.data import proof_names
from decexc.kernel import check_derivation
from decexc.proofs import build_library, derived_rule_library, load_script, render

LIBRARY = {e.name: e for e in build_library()}


def test_every_library_entry_is_shipped():
    assert sorted(f"{n}.dproof" for n in LIBRARY) == proof_names()


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_script_matches_builder(name):
    entry = LIBRARY[name]
    pf = load_script(f"{name}.dproof")
    assert pf.derivation.conclusion == entry.derivation.conclusion
    assert pf.derivation == entry.derivation


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_shipped_file_is_current(name):
    from decexc.data import read_text
    assert read_text("proofs", f"{name}.dproof") == render(LIBRARY[name])


def test_library_verdicts():
    lib = derived_rule_library()
    assert set(lib) == set(LIBRARY)
    assert all(s.verdict.ok for s in lib.values())


def test_family_f_entries():
    fam = {n for n, e in LIBRARY.items() if e.family_f}
    assert fam == {"lemma_untag_tag", "lemma_untag_untag"}
    for n in fam:
        rules = {node.rule for _, node in LIBRARY[n].derivation.nodes()}
        assert rules & {"f2", "f3"}


def test_lemma_uses_expected_families():
    rules = {node.rule for _, node in LIBRARY["lemma_coprod_cotu_part1"].derivation.nodes()}
    assert {"b6", "d3", "a1", "d1"} <= rules
    rules = {node.rule for _, node in LIBRARY["lemma_coprod_cotu_part2"].derivation.nodes()}
    assert any(r.startswith("e") for r in rules)


def test_untag_tag_checks_at_every_index():
    from decexc.proofs import Prover, untag_tag
    from decexc.syntax import Base, decorated_spec
    for n in (1, 2, 3):
        s = decorated_spec(("A", "B"), (), {str(k + 1): Base("AB"[k % 2]) for k in range(n)})
        for i in s.indices:
            d = untag_tag(Prover(s), i)
            assert check_derivation(d, s).ok
