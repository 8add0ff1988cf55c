import numpy as np
import pytest

from fusioncheck.catalog import CATALOG_NAMES, catalog_get
from fusioncheck.kernels import implementations

UNITARY_MODELS = [m for m in CATALOG_NAMES if m != "yang_lee"]


@pytest.fixture(params=CATALOG_NAMES)
def model(request):
    return catalog_get(request.param)


@pytest.fixture(params=[m for m in CATALOG_NAMES if catalog_get(m).R is not None])
def braided_model(request):
    return catalog_get(request.param)


@pytest.fixture(params=sorted(implementations()))
def kernel_impl(request):
    return implementations()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
