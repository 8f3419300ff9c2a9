import pytest

# lines recorded by the acceptance module, echoed in the terminal summary
CRITERIA_LINES: list[str] = []


@pytest.fixture
def criterion():
    def record(number: int, title: str, passed: bool, detail: str = ""):
        line = f"{'PASS' if passed else 'FAIL'}  criterion {number:2d}  {title}"
        if detail:
            line += f"  ({detail})"
        CRITERIA_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
