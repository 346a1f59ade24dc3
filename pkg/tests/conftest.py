import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record a one-line verdict that is echoed in the terminal summary."""

    def record(number: int, ok: bool, text: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
