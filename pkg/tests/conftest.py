import pytest

ACCEPTANCE: list[str] = []


def format_line(name: str, passed: bool, detail: str) -> str:
    return f"{'PASS' if passed else 'FAIL'} {name}: {detail}"


@pytest.fixture
def criterion():
    def record(name, passed, detail):
        line = format_line(name, passed, detail)
        ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
