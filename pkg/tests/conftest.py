import pytest

from semidense import catalog
from semidense.kernels import available_backends
from semidense.semigroup import direct_product

_criteria = {}
_titles = {}


@pytest.fixture
def RZ2():
    return catalog.right_zero(2)


@pytest.fixture
def LZ2():
    return catalog.left_zero(2)


@pytest.fixture
def C2():
    return catalog.cyclic_group(2)


@pytest.fixture
def SL2():
    """Two-element meet semilattice; 0 is absorbing."""
    return catalog.chain_semilattice(2)


@pytest.fixture
def C2xRZ2():
    """Element (g, z) sits at index 2*g + z."""
    return direct_product(catalog.cyclic_group(2), catalog.right_zero(2))


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def pytest_runtest_logreport(report):
    if report.when == "call" or report.outcome != "passed":
        for key in report.keywords:
            if key.startswith("criterion_"):
                _criteria[key] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            number, title = mark.args
            key = f"criterion_{number:02d}"
            item.keywords[key] = True
            _criteria.setdefault(key, "not run")
            _titles[key] = title


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        outcome = _criteria[key]
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{verdict}  {int(key.split('_')[1]):2d}  {_titles[key]}")
