"""Collects acceptance verdicts and prints them at the end of the run."""

ACCEPTANCE = []


def record(label, ok, detail):
    ACCEPTANCE.append((label, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
