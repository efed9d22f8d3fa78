import os

import pytest
from hypothesis import HealthCheck, settings

from hyperdra import fixtures

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list = []


@pytest.fixture
def mid():
    return fixtures.mid()


@pytest.fixture
def mid_plus():
    return fixtures.mid_plus()


@pytest.fixture
def even5():
    return fixtures.even5()


@pytest.fixture
def parity():
    return fixtures.parity()


@pytest.fixture
def empty():
    return fixtures.empty()


@pytest.fixture
def acceptance_line():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
