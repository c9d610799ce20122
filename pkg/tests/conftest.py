"""Collects the acceptance-gate verdict lines and prints them after the
run, outside pytest's output capture."""

_criterion_lines = []


def record_criterion(line: str) -> None:
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_lines:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in _criterion_lines:
        terminalreporter.write_line(line)
