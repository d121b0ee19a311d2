"""Acceptance criteria, run at full scale with one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -s`. The heavy suites fan out
over all available cores; every expectation and time budget is asserted.
"""

import os

import pytest

from topfree import demo_config
from topfree import proptests

WORKERS = os.cpu_count() or 1


def _report(number: int, name: str, result, budget: float | None) -> None:
    state = "PASS" if result.ok else "FAIL"
    extra = f" within {budget:.0f}s" if budget is not None else ""
    print(
        f"\nACCEPTANCE {number} {name}: {state} "
        f"(checked={result.checked}, elapsed={result.elapsed:.1f}s{extra})"
    )
    for failure in result.failures[:5]:
        print(f"  counterexample: {failure}")


@pytest.fixture(scope="module")
def config():
    return demo_config()


@pytest.fixture(scope="module")
def separation_result(config):
    return proptests.separation_suite(
        config, words=1000, max_len=8, samples=1000, seed=2024, workers=WORKERS
    )


def test_criterion_1_confluence_normal_form(config):
    result = proptests.confluence_suite(
        config, words=100_000, max_len=12, orders=20, seed=101, workers=WORKERS
    )
    _report(1, "confluence / normal form", result, 60)
    assert result.checked == 100_000
    assert result.failures == []
    assert result.elapsed < 60


def test_criterion_2_groupwise_collapse_exhaustive(config):
    result = proptests.collapse_suite(config, group_ids=("z2", "z3"), max_len=6)
    _report(2, "exhaustive groupwise collapse", result, 5)
    # all words of length <= 6 over the five letter symbols of Z/2 and Z/3
    assert result.checked == sum(5**n for n in range(1, 7))
    assert result.details["trivial_words"] > 0
    assert result.failures == []
    assert result.elapsed < 5


def test_criterion_3_structure_transfer(config):
    result = proptests.transfer_suite(
        config, pairs=10_000, mutations=1000, max_len=6, seed=303
    )
    _report(3, "uniform-structure transfer", result, 30)
    assert result.details["pairs"] == 10_000
    assert result.details["mutations"] == 1000
    assert result.details["flagged"] == 1000
    assert result.failures == []
    assert result.elapsed < 30


def test_criterion_4_separation_soundness(separation_result):
    result = separation_result
    _report(4, "separation soundness", result, 120)
    assert result.checked == 1000
    assert result.failures == []
    assert result.elapsed < 120


def test_criterion_5_puncture_structural_audit(separation_result):
    result = separation_result
    print(
        f"\nACCEPTANCE 5 puncture structural audit: "
        f"{'PASS' if result.ok else 'FAIL'} "
        f"(away descriptors audited: {result.details['away_descriptors']})"
    )
    assert result.details["away_descriptors"] > 0
    structural = [f for f in result.failures if "descriptor" in f or "punctured" in f]
    assert structural == []


def test_criterion_6_point_separation(config):
    result = proptests.point_separation_suite(
        config, pairs=1000, max_len=6, samples=200, seed=606, workers=WORKERS
    )
    _report(6, "two-point separation", result, 60)
    assert result.checked == 1000
    assert result.failures == []
    assert result.elapsed < 60


def test_criterion_7_analytic_bounds(config):
    result = proptests.bounds_suite(config, cases=1000, seed=707)
    _report(7, "analytic separation bounds", result, 5)
    assert result.checked == 1000
    assert result.failures == []
    assert result.elapsed < 5


def test_criterion_8_tamper_detection(config):
    result = proptests.tamper_suite(config, certs=100, seed=808)
    _report(8, "tamper detection", result, None)
    assert result.checked == 100
    assert result.details["rejected"] > 0
    assert result.failures == []
