"""Shared test plumbing: the acceptance verdict banner."""

ACCEPTANCE_LINES: list[str] = []
ACCEPTANCE_EXPECTED = 9


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    seen = {int(line.split(":")[0].split()[-1]) for line in ACCEPTANCE_LINES}
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    for n in range(1, ACCEPTANCE_EXPECTED + 1):
        if n not in seen:
            terminalreporter.write_line(
                f"criterion {n}: FAIL - test errored before reaching a verdict"
            )
