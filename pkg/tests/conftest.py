import random

import pytest

from disthom.magma import BinOp, is_shelf


def random_shelf(n, rng, tries=20000):
    """Rejection-sample a shelf on n elements."""
    for _ in range(tries):
        op = BinOp([[rng.randrange(n) for _ in range(n)] for _ in range(n)])
        if is_shelf(op):
            return op
    raise RuntimeError("no shelf found")


@pytest.fixture
def rng():
    return random.Random(20261014)


# ---------------------------------------------------------------- acceptance summary

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    if rep.passed:
        status = "PASS"
    elif hasattr(rep, "wasxfail"):
        status = "FAIL (expected, see decisions ledger)"
    else:
        status = "FAIL"
    _CRITERIA.append((mark.args[0], status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _CRITERIA:
        terminalreporter.write_line(f"{status:<5} {label}")
