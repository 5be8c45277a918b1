import os
import sys

import pytest
from hypothesis import HealthCheck, settings

APP_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "app")
if APP_DIR not in sys.path:
    sys.path.insert(0, APP_DIR)

settings.register_profile(
    "ci",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
    print_blob=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the slow end-to-end quadrature tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: end-to-end quadrature test, minutes of CPU")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def spec3():
    from kernel.domain import DomainSpec
    return DomainSpec(3, 1, (0.25,))


@pytest.fixture
def spec4():
    from kernel.domain import DomainSpec
    return DomainSpec(4, 2, (0.25, 0.25))
