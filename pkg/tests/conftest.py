import pytest

# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def acceptance():
    def record(number, description, passed):
        ACCEPTANCE_RESULTS[number] = (bool(passed), description)
        print(f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} - {description}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, description = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {description}")
