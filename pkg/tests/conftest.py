import pytest

import reference_data as REF
from trop3.schlaefli import classify_all, schlaefli_fan
from trop3.triangulation import Triangulation


@pytest.fixture(scope="session")
def typical():
    return Triangulation(REF.TYPICAL_FACETS)


@pytest.fixture(scope="session")
def honeycomb():
    return Triangulation(REF.HONEYCOMB_FACETS)


@pytest.fixture(scope="session")
def typical_classes(typical):
    """(global, partial, hardly) visibility cones of the typical occurrences."""
    return classify_all(typical)


@pytest.fixture(scope="session")
def typical_cones(typical_classes):
    g, p, h = typical_classes
    return g + p + h


@pytest.fixture(scope="session")
def typical_fan(typical, typical_cones):
    return schlaefli_fan(typical, typical_cones)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
