import json

import pytest

from decexc.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_shipped(capsys):
    code, out, _ = run(capsys, "check", "exceptions.dexc", "lemma_catch_raise.dproof")
    assert code == EXIT_OK and out.startswith("accepted")


def test_check_structured(capsys):
    code, out, _ = run(capsys, "check", "lemma_untag_tag.dproof", "--format", "structured")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["verdict"] == "pass"
    assert all(n["verdict"] == "ok" for n in doc["nodes"])


def test_check_rejects_tampered(capsys, tmp_path):
    from decexc.data import read_text
    text = read_text("proofs", "lemma_coprod_cotu_part1.dproof").replace(
        "b6 {", "b7 {", 1)
    p = tmp_path / "bad.dproof"
    p.write_text(text)
    code, out, _ = run(capsys, "check", "exceptions.dexc", str(p))
    assert code == EXIT_FAIL and "node 0 [b7]" in out


def test_equiv_witness(capsys):
    code, out, _ = run(capsys, "equiv", "c1 o t1 == id{Nat}", "--spec", "exceptions.dexc",
                       "--model", "exceptions.dmodel")
    assert code == EXIT_FAIL and "witness throws 1(n0)" in out


def test_equiv_holds(capsys):
    code, out, _ = run(capsys, "equiv", "c1 o t1 ~ id{Nat}", "--spec", "exceptions.dexc",
                       "--battery", "small")
    assert code == EXIT_OK and out.startswith("holds")


def test_empty_clause_list(capsys):
    code, _, err = run(capsys, "eval", "try succ catch()", "--spec", "exceptions.dexc",
                       "--model", "exceptions.dmodel")
    assert code == EXIT_USAGE and "error" in err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "c1", "throws 1(n2)", "--spec", "exceptions.dexc",
                       "--model", "exceptions.dmodel")
    assert code == EXIT_OK and "throws 1(n2) -> n2" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "check", "exceptions.dexc", "nope.dproof")
    assert code == EXIT_USAGE and "no such file" in err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "exceptions.dexc")
    assert code == EXIT_OK
    assert "logic: explicit" in out and "c1 o t2 == ina{Nat} o t2" in out


def test_expand_rules(capsys):
    code, out, _ = run(capsys, "expand", "--rules", "--format", "structured")
    doc = json.loads(out)
    assert code == EXIT_OK and len(doc["rules"]) == 42


def test_demo_exceptions(capsys):
    code, out, _ = run(capsys, "demo", "exceptions", "--battery", "small")
    assert code == EXIT_OK and "down([id{Y} | [g | []{Y}] o c1] o f)" in out


def test_demo_paper_deterministic(capsys):
    a = run(capsys, "demo", "paper", "--battery", "small", "--format", "structured")
    b = run(capsys, "demo", "paper", "--battery", "small", "--format", "structured")
    assert a[0] == EXIT_OK and a == b
    doc = json.loads(a[1])
    assert [i["id"] for i in doc["items"]] == [
        "proofs", "reconstructed", "rules", "spec-expansion", "commutation", "handler",
        "soundness", "negative"]
    assert all({"id", "anchor", "verdict", "witness"} <= set(i) for i in doc["items"])


def test_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == EXIT_USAGE
