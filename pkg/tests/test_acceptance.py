"""Acceptance criteria 1-10, one pass/fail line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py [--threads T]``.
"""

from __future__ import annotations

import sys

import pytest

from gridshell.checks import CRITERIA, determinism_report, run_criteria

PARALLEL_THREADS = 2


def report_line(k: int, rep: dict) -> str:
    return f"criterion {k:>2}: {'PASS' if rep['passed'] else 'FAIL'}  {CRITERIA[k]}"


@pytest.fixture(scope="session")
def single_run() -> dict[int, dict]:
    return run_criteria(range(1, 10), threads=1)


def _check(k, rep, capsys):
    with capsys.disabled():
        print("\n" + report_line(k, rep))
    assert rep["passed"], rep


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, single_run, capsys):
    _check(k, single_run[k], capsys)


def test_criterion_3_details(single_run):
    for run in single_run[3]["runs"].values():
        for g in run.values():
            assert g["weak_strict_discrepancies"] == 0
            assert g["repeated_labelings"] == 0
            assert set(g["hexagon_beta_counts"]) <= {"3", "4"}
    lengths = single_run[3]["runs"]["length<=5,n<=4"]
    assert any("5" in g["by_length"] for g in lengths.values())


def test_criterion_5_volume(single_run):
    assert single_run[5]["domains"] >= 10_000 and single_run[5]["index_one_domains"] > 0


def test_criterion_9_details(single_run):
    for g in single_run[9]["grids"].values():
        assert g["mor_spaces"] == g["seeded_shellings"]
        assert set(g["thin"]) == {"Subthin"}


def test_criterion_10(single_run, capsys):
    _check(10, determinism_report(single_run, PARALLEL_THREADS), capsys)


def main(argv: list[str]) -> int:
    threads = int(argv[argv.index("--threads") + 1]) if "--threads" in argv else PARALLEL_THREADS
    single = run_criteria(range(1, 10), threads=1)
    reports = dict(single)
    reports[10] = determinism_report(single, threads)
    for k in range(1, 11):
        print(report_line(k, reports[k]))
    return 0 if all(r["passed"] for r in reports.values()) else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
