"""Shared pytest wiring: print one verdict line per acceptance criterion.

Tests register verdicts in ACCEPTANCE_VERDICTS; they are echoed after the
run, outside pytest's output capture, so every line is always visible.
"""

ACCEPTANCE_VERDICTS: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_VERDICTS):
        terminalreporter.write_line(line)
