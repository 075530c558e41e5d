"""Acceptance criteria 1-8, each run at its stated scale and tolerance.

Each test records a one-line verdict; ``conftest.py`` prints the lines in
the terminal summary so they appear in every ``pytest`` run.
"""

import time

import pytest

from decexc import suite

RESULTS: dict = {}


def _record(n: int, item, limit=None):
    ok = item.ok and (limit is None or item.seconds < limit)
    timing = f", {item.seconds:.2f}s" + (f" < {limit}s" if limit else "")
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} {item.id} ({item.detail}{timing})"
    print(RESULTS[n])
    return ok


def _run(fn):
    t = time.perf_counter()
    item = fn()
    item.seconds = time.perf_counter() - t
    return item


def test_criterion_1_shipped_proofs():
    names = suite.PROOF_SCRIPTS_LEMMA + (suite.PROOF_SCRIPT_CATCH_RAISE,)
    item = _run(lambda: suite.item_scripts(names))
    assert _record(1, item, 1.0), item.witness


def test_criterion_2_reconstructed_lemmas():
    item = _run(lambda: suite.item_reconstructed(range(4), (1, 2, 3)))
    assert item.stats["kernel_ok"]
    assert _record(2, item), item.witness


def test_criterion_3_rule_expansion():
    item = _run(suite.item_rules)
    methods = item.stats["methods"]
    assert all(methods[r] == "syntactic" for r in methods if r[0] in "ad")
    assert _record(3, item, 60.0), item.witness


def test_criterion_4_spec_expansion():
    item = _run(lambda: suite.item_spec_expansion(60, max_indices=4))
    assert _record(4, item), item.witness


def test_criterion_5_commutation():
    item = _run(lambda: suite.item_commutation(150, 5, range(4)))
    assert _record(5, item), item.witness


def test_criterion_6_differential_handler():
    item = _run(lambda: suite.item_handler(2, 3))
    assert item.stats["covered"] > 0
    assert _record(6, item, 60.0), item.witness


def test_criterion_7_soundness():
    item = _run(lambda: suite.item_soundness(100))
    assert _record(7, item), item.witness


def test_criterion_8_negative_controls():
    item = _run(suite.item_negative)
    assert _record(8, item), item.witness
