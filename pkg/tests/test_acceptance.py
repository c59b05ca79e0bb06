"""Acceptance criteria, each run at tolerance 0 with its default case count.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""
import pytest

from periodstrata.verify import run_suite

CRITERIA = [
    (1, "splitting", 10.0),
    (2, "rank-equality", None),
    (3, "artinian", None),
    (4, "monotonicity", None),
    (5, "running-example", None),
    (6, "flatness", None),
    (7, "h1-base-change", None),
    (8, "datum-axioms", None),
    (9, "min-covers", 60.0),
    (10, "strata", None),
    (11, "self-dual", None),
]


@pytest.mark.parametrize("number,suite,budget", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, suite, budget, acceptance_log):
    report = run_suite(suite, seed=0)
    in_budget = budget is None or report.elapsed <= budget
    ok = report.passed and in_budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {report.summary()}"
    if budget is not None:
        line += f" (budget {budget:g}s)"
    acceptance_log.append(line)
    print(line)
    for h in report.hypotheses:
        print(f"    hypothesis {h.name}: {h.status}" + (f" ({h.note})" if h.note else ""))
    for f in report.failures[:5]:
        print(f"    failure {f.case}: {f.detail}")
    assert report.cases > 0
    assert not report.failures, report.failures[:5]
    assert in_budget, f"{report.elapsed:.2f}s exceeds {budget}s"
