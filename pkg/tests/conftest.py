import sys

import numpy as np
import pytest

from semiring_bellman import make_instance

SHIPPED = ["rplus", "maxplus", "maxplus_completed", "maxmin:0:10", "minplus", "boolean", "chain:3"]
IDEMPOTENT = ["maxplus", "maxplus_completed", "maxmin:0:10", "minplus", "boolean", "chain:3"]


@pytest.fixture(params=SHIPPED)
def shipped(request):
    return make_instance(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20001)


@pytest.fixture
def maxplus():
    return make_instance("maxplus")


@pytest.fixture
def rplus():
    return make_instance("rplus")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.line(number))
