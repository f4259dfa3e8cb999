import pytest

from mam.fixtures import FIXTURES, load_fixture

POSITIVE = [fx.name for fx in FIXTURES if not fx.negative]
PLANAR = [fx.name for fx in FIXTURES if not fx.negative and fx.k == 2
          and fx.name != "outside_hull"]

_acceptance = {}


def record_acceptance(number, ok, detail):
    _acceptance[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        ok, detail = _acceptance[number]
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def pentagon():
    return load_fixture("pentagon")


@pytest.fixture
def row1():
    return load_fixture("table1_row1")
