import sys

import pytest

from omp.catalog import catalog_get


@pytest.fixture(scope="session")
def cube():
    return catalog_get("cube3-program").payload


@pytest.fixture(scope="session")
def prism():
    return catalog_get("prism3-program").payload


@pytest.fixture(scope="session")
def programs(cube, prism):
    return {"cube3-program": cube, "prism3-program": prism}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
