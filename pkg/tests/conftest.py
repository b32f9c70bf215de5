import pytest

from metakit.catalog import CATALOG
from metakit.metalattice import build_metaplectic_datum
from metakit.rootdata import build_root_datum


def datum_of(entry):
    return build_root_datum(entry["rank"], entry["simple_coroots"], entry["simple_roots"])


def md_of(name, n=None):
    e = CATALOG[name]
    return build_metaplectic_datum(datum_of(e), e["B"], e["n"] if n is None else n)


@pytest.fixture
def sl2():
    return build_root_datum(1, [[1]], [[2]])


@pytest.fixture
def sl3():
    return datum_of(CATALOG["sl3-n1"])


@pytest.fixture
def sp4():
    return datum_of(CATALOG["sp4-n1"])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
