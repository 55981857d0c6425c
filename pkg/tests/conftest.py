import random

import pytest
from hypothesis import settings

DEFAULT_SEED = 20261016

settings.register_profile("ci", derandomize=True, deadline=None)
settings.load_profile("ci")

_acceptance_lines = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        status = "PASS" if rep.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {marker.args[0]}: {marker.args[1]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
