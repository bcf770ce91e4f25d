import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from idealis.graph import Graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def c4():
    return Graph.cycle("abcd")


@pytest.fixture
def c5():
    return Graph.cycle(["u1", "u2", "u3", "u4", "u5"])


@pytest.fixture
def order_graph():
    return Graph.from_edges([tuple(e) for e in "ab bc bd be bf bg cd de ef fg gc".split()], "abcdefg")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
