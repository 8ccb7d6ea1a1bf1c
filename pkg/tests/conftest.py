import numpy as np
import pytest

from multiwav.transform import MultiSignal

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


@pytest.fixture
def sin50():
    return MultiSignal.from_function(np.sin, 0.0, 2 * np.pi, 50)


@pytest.fixture
def rng():
    return np.random.default_rng(20260)
