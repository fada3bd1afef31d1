import json
import pathlib

import pytest

from wetcasimir import Drude
from wetcasimir.materials_io import MaterialDatabase, builtin_table1

HERE = pathlib.Path(__file__).parent

# filled by test_acceptance.py, printed at the end of the run
CRITERIA = {}


@pytest.fixture(scope="session")
def golden():
    return json.loads((HERE / "golden_values.json").read_text())


@pytest.fixture(scope="session")
def db():
    return MaterialDatabase.load()


@pytest.fixture(scope="session")
def liquids(db):
    return {name: db[name].model for name in ("water", "ccl3f", "cbr3f")}


@pytest.fixture(scope="session")
def au():
    return {n: Drude(builtin_table1(n)) for n in (1.0, 1.33, 1.42, 1.51, 1.60)}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
