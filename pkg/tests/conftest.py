import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sinosent.normalizer import load_table


@pytest.fixture(scope="session")
def table():
    return load_table()


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
