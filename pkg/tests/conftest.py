"""Prints one pass/fail line per acceptance criterion after the test run.

The lines come from the terminal summary hook so they survive output
capture and land in piped logs.
"""

import pytest

_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if (rep.when == "call" and "test_acceptance.py" in item.nodeid
            and item.name.startswith("test_criterion_")):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _results.append((item.name, rep.passed, rep.duration, doc))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for _, passed, duration, doc in sorted(_results):
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{word}  {doc}  [{duration:.2f}s]")
