"""Shared pytest plumbing.

The acceptance module records one verdict line per criterion here so the
lines survive output capture and show up in the terminal summary of every
run, pass or fail.
"""

VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
