"""Shared pytest wiring: collects per-criterion verdict lines from the
acceptance suite and prints them in a terminal section at the end of the run,
so the one-line-per-criterion report survives output capture."""

CRITERION_LINES: list[str] = []


def record_criterion(line: str) -> None:
    CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)
