"""Per-criterion PASS/FAIL summary for the acceptance tests.

Tests marked ``@pytest.mark.criterion("3")`` feed one summary line per
criterion; a criterion passes only if every test carrying it passed.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    item_marks = getattr(report, "criterion_ids", None)
    if not item_marks:
        return
    if report.when == "call" or report.outcome != "passed":
        for cid in item_marks:
            _RESULTS.setdefault(cid, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion_ids = [str(m.args[0]) for m in item.iter_markers("criterion")]


def _sort_key(cid: str):
    head, _, tail = cid.partition("-")
    return (int(head) if head.isdigit() else 99, tail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for cid in sorted(_RESULTS, key=_sort_key):
        outcomes = _RESULTS[cid]
        if all(o == "passed" for o in outcomes):
            status = "PASS"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {cid}: {status}  {CRITERIA.get(cid, '')}")
