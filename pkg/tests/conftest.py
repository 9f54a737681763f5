import pytest

# criterion number -> (passed, description)
ACCEPTANCE = {}


@pytest.fixture
def record_acceptance():
    def record(number, passed, description):
        ACCEPTANCE[number] = (bool(passed), description)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, description = ACCEPTANCE[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if passed else 'FAIL'}  {description}"
        )
