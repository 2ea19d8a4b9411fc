import sys

import pytest
from hypothesis import settings

from pseudobialg.catalog import nonabelian_2d
from pseudobialg.hopf import LieAlgebraPresentation

settings.register_profile("pkg", max_examples=60, deadline=None)
settings.load_profile("pkg")


@pytest.fixture(scope="session")
def k1():
    return LieAlgebraPresentation(1)


@pytest.fixture(scope="session")
def k2():
    return LieAlgebraPresentation(2)


@pytest.fixture(scope="session")
def na():
    return nonabelian_2d()


@pytest.fixture(scope="session", params=["k1", "k2", "na"])
def alg(request):
    return request.getfixturevalue(request.param)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
