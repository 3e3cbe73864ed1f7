"""Acceptance battery: each test runs one exit criterion at its stated
budget over the full-size sweep (every preorder on up to 4 points plus
1000 seeded random spaces on 6..8 points, with 200 random 6-point spaces
for the heavier batteries) and prints one pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.
"""

import filecmp
import random
import time

import pytest

from topolab.cli import main
from topolab.suites import (
    SUITE_FUNCTIONS,
    SuiteConfig,
    build_populations,
)

SEED = 2026
CONFIG = SuiteConfig(seed=SEED, max_points=4, sample_count=1000)


@pytest.fixture(scope="module")
def pools():
    exhaustive, random_large, random_small, counts = build_populations(CONFIG)
    return {
        "exhaustive": exhaustive,
        "random_large": random_large,
        "random_small": random_small,
        "counts": counts,
    }


def _run(name, pools):
    started = time.monotonic()
    rec = SUITE_FUNCTIONS[name](
        exhaustive=pools["exhaustive"],
        random_large=pools["random_large"],
        random_small=pools["random_small"],
        rng=random.Random(f"{SEED}:{name}"),
    )
    elapsed = time.monotonic() - started
    return rec, elapsed


def _verdict(criterion, rec, elapsed, budget=None):
    ok = not rec.failures and (budget is None or elapsed <= budget)
    line = (
        f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} "
        f"({rec.instances} instances, {rec.checks} checks, "
        f"{len(rec.failures)} failures, {elapsed:.1f}s"
        + (f" / budget {budget}s" if budget else "")
        + ")"
    )
    print(line)
    assert not rec.failures, rec.failures[:3]
    if budget is not None:
        assert elapsed <= budget, f"over budget: {elapsed:.1f}s > {budget}s"


def test_criterion_1_lss_equivalence_sweep(pools):
    counts = pools["counts"]
    preorders = sum(counts["exhaustive_preorders"].values())
    posets = sum(counts["exhaustive_posets"].values())
    assert preorders == 1 + 4 + 29 + 355
    assert 0 < posets < preorders  # both poset and non-poset instances swept
    assert counts["random_large"] == 1000
    rec, elapsed = _run("lss_equivalence", pools)
    assert rec.instances == preorders + 1000
    _verdict("1 (locally-strongly-sober equivalences)", rec, elapsed, budget=120)


def test_criterion_2_dual_oracles(pools):
    rec, elapsed = _run("dual_oracles", pools)
    _verdict("2 (dual-algorithm oracle agreement)", rec, elapsed, budget=120)


def test_criterion_3_hofmann_mislove(pools):
    rec, elapsed = _run("hofmann_mislove", pools)
    assert rec.instances == len(pools["exhaustive"]) + 200
    _verdict("3 (filter/compact-saturated correspondence)", rec, elapsed)


def test_criterion_4_stone_round_trip(pools):
    rec, elapsed = _run("stone_duality", pools)
    _verdict("4 (unit homeomorphism and spatiality)", rec, elapsed)


def test_criterion_5_opens_temperance(pools):
    rec, elapsed = _run("opens_temperance", pools)
    assert rec.instances > 0
    _verdict("5 (opens-lattice temperance conjunction)", rec, elapsed)


def test_criterion_6_powerdomain(pools):
    rec, elapsed = _run("powerdomain", pools)
    assert rec.instances == len(pools["exhaustive"]) + 200
    _verdict("6 (lens/quasi-lens round trips and orders)", rec, elapsed, budget=180)


def test_criterion_7_waybelow_stability(pools):
    rec, elapsed = _run("waybelow_stability", pools)
    # opens-lattices of the sweep + 100 random distributive + 5 Booleans
    assert rec.instances == len(pools["exhaustive"]) + 100 + 5
    _verdict("7 (way-below, stability, temperance cross-check)", rec, elapsed)


def test_criterion_8_symbolic_counterexamples(pools):
    rec, elapsed = _run("counterexamples", pools)
    _verdict("8 (symbolic counterexample battery)", rec, elapsed, budget=10)


def test_criterion_9_deterministic_reports(tmp_path):
    first = str(tmp_path / "first.json")
    second = str(tmp_path / "second.json")
    args = ["suite", "--seed", "7", "--max-points", "3", "--samples", "50"]
    assert main(args + ["--out", first]) == 0
    assert main(args + ["--out", second]) == 0
    identical = filecmp.cmp(first, second, shallow=False)
    print(f"ACCEPTANCE 9 (byte-identical reports): {'PASS' if identical else 'FAIL'}")
    assert identical
