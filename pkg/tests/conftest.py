from decimal import Decimal

import pytest

from stationga.instance import Instance, PrecedenceGraph, Task

ACCEPTANCE_LINES: list[str] = []


def make_instance(durations, costs, K, edges=()):
    tasks = tuple(Task(i, d, Decimal(str(c))) for i, (d, c) in enumerate(zip(durations, costs)))
    return Instance(tasks, PrecedenceGraph(len(tasks), frozenset(edges)), K)


@pytest.fixture
def chain3():
    return make_instance([2, 2, 2], [1, 1, 1], 4, [(0, 1), (1, 2)])


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class ScriptedRNG:
    """Stand-in for random.Random that replays fixed values."""

    def __init__(self, ints=(), floats=()):
        self._ints = list(ints)
        self._floats = list(floats)

    def randint(self, a, b):
        v = self._ints.pop(0)
        assert a <= v <= b
        return v

    def randrange(self, n):
        v = self._ints.pop(0)
        assert 0 <= v < n
        return v

    def random(self):
        return self._floats.pop(0)
