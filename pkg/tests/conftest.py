import random

import pytest

from network_spectra import fixtures

ALL_FIXTURES = list(fixtures.FIXTURE_NAMES)


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture(params=ALL_FIXTURES)
def any_network(request):
    return fixtures.build(request.param)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: spec acceptance criteria")
