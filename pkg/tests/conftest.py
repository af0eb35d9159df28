import pytest

# (number, title, passed) for every acceptance criterion that ran
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {number:>2}. {title}")


@pytest.fixture
def criterion():
    """Record and print one PASS/FAIL line; returns the list of failures for asserting."""
    def record(number, title, failures):
        failures = list(failures)
        ACCEPTANCE.append((number, title, not failures))
        print(f"{'PASS' if not failures else 'FAIL'} {number:>2}. {title}")
        for f in failures[:5]:
            print(f"      {f}")
        return failures
    return record
