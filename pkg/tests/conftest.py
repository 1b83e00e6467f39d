import pathlib
import sys

import pytest

from dastacked.parser import load_algebra

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
sys.path.insert(0, str(pathlib.Path(__file__).parent))


def fixture_path(name):
    return FIXTURES / f"{name}.alg"


def load(name):
    return load_algebra(fixture_path(name))


@pytest.fixture(scope="session")
def spec_of():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load(name)
        return cache[name]
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
