"""Pytest wiring shared by the suite.

After the run summary, replay the acceptance-criteria PASS/FAIL lines
collected by test_acceptance so they are visible even under output
capture.
"""

import sys


def pytest_terminal_summary(terminalreporter):
    module = (sys.modules.get("tests.test_acceptance")
              or sys.modules.get("test_acceptance"))
    lines = getattr(module, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
