from __future__ import annotations

import pytest

from torsionfree_lab.algebra import builtin_algebra
from torsionfree_lab.linalg import Field


@pytest.fixture(scope="session")
def gf5():
    return Field.gf(5)


@pytest.fixture(scope="session")
def qq():
    return Field.qq()


@pytest.fixture(scope="session")
def alg():
    """Built-in algebras over the default field, shared across tests (caches included)."""
    cache = {}

    def get(name, field=None):
        key = (name, None if field is None else field.spec().get("p", "qq"))
        if key not in cache:
            cache[key] = builtin_algebra(name, field)
        return cache[key]
    return get


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
