import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mrchirp import Signal, synth_example1, synth_example2

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Collector for the one-line pass/fail verdicts of the criteria suite."""
    def record(line: str):
        _ACCEPTANCE_LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ex1():
    return synth_example1(0)


@pytest.fixture(scope="session")
def ex2():
    return synth_example2(0)


@pytest.fixture(scope="session")
def tone64():
    # short complex tone well inside the alias-free band
    fs = 64.0
    t = np.arange(64) / fs
    return Signal(samples=np.exp(2j * np.pi * 10.0 * t), fs=fs)
