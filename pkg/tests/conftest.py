import pytest

from ribbonpoly.ribbon import from_rotation


@pytest.fixture
def bridge():
    return from_rotation([["a"], ["a'"]], [("a", "a'")], name="bridge")


@pytest.fixture
def loop():
    return from_rotation([["a", "a'"]], [("a", "a'")], name="loop")


@pytest.fixture
def torus():
    return from_rotation([["a", "b", "a'", "b'"]], [("a", "a'"), ("b", "b'")], name="torus")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
