import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from greywolf import ObjectiveSpec  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def sphere2():
    return ObjectiveSpec(2, [-100, -100], [100, 100], lambda x: float(np.sum(x**2)),
                         batch=lambda X: np.sum(X**2, axis=1))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one pass/fail line per acceptance criterion for the summary."""
    return ACCEPTANCE_LINES
