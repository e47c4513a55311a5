import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from udcp.core import kasami_lin  # noqa: E402


@pytest.fixture
def kl():
    return kasami_lin()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
