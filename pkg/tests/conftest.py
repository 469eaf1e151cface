import pytest

from fracineq.function_classes import default_corpus

# Filled by tests/test_acceptance.py; echoed at the end of the run so the
# per-criterion lines are visible even with output capture on.
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
