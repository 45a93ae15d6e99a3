import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spatial_cubes.raag import DefiningGraph  # noqa: E402

SMALL_GRAPHS = {
    "a": DefiningGraph.make("a"),
    "f2": DefiningGraph.make("ab"),
    "ab": DefiningGraph.make("ab", [("a", "b")]),
    "f3": DefiningGraph.make("abc"),
    "abc-ab": DefiningGraph.make("abc", [("a", "b")]),
    "path": DefiningGraph.make("abc", [("a", "b"), ("b", "c")]),
    "triangle": DefiningGraph.make("abc", [("a", "b"), ("b", "c"), ("a", "c")]),
}


@pytest.fixture
def graphs():
    return SMALL_GRAPHS


@pytest.fixture
def abc():
    return SMALL_GRAPHS["abc-ab"]


@pytest.fixture
def f2():
    return SMALL_GRAPHS["f2"]


ACCEPTANCE_LINES: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    if call.when == "call":
        item.rep_call_passed = outcome.get_result().passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
