import copy
from importlib import resources

import pytest

from unmating.complex import load_skeleton, parse_skeleton
from unmating.connection import load_connection
from unmating.lift2 import load_mapping_portrait

DATA = resources.files("unmating") / "data"


def data_path(name):
    return str(DATA / name)


def fresh(s):
    """Deep copy without cached faces, for mutation tests."""
    t = copy.deepcopy(s)
    t._faces = None
    t._sectors = None
    return t


@pytest.fixture
def lattes():
    return load_skeleton(data_path("lattes333.skel"))


@pytest.fixture
def ghex():
    return load_skeleton(data_path("g-hex.skel"))


@pytest.fixture
def pres_conn(lattes):
    return load_connection(data_path("fig2.conn"), lattes)


@pytest.fixture
def rev_conn(lattes):
    return load_connection(data_path("fig3.conn"), lattes)


@pytest.fixture
def quad():
    return load_mapping_portrait(data_path("sec10-portrait.mp"))


_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, ok, detail)``; asserts ``ok``."""

    def record(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        _CRITERIA.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
