from fractions import Fraction

import pytest

from qeuler.characters import char_enumerate, char_quadratic, char_trivial


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture(scope="session")
def small_chars():
    """Every character mod 1, 3 and 5, complex ones included."""
    return [chi for d in (1, 3, 5) for chi in char_enumerate(d)]


@pytest.fixture(scope="session")
def real_chars():
    return [char_trivial(1), char_trivial(3), char_quadratic(3), char_quadratic(5)]


_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, text = mark.args
    ok = report.passed and _criteria.get(number, (text, True))[1]
    _criteria[number] = (text, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
