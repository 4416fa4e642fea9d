import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    ident = getattr(report, "criterion", None)
    if ident is None:
        return
    entry = _CRITERIA.setdefault(ident[0], {"title": ident[1], "ok": True, "n": 0})
    entry["n"] += 1
    entry["ok"] &= report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")

    def order(key):
        num = "".join(c for c in key if c.isdigit())
        return (int(num or 0), key)

    for key in sorted(_CRITERIA, key=order):
        e = _CRITERIA[key]
        status = "PASS" if e["ok"] else "FAIL"
        tr.write_line(f"{status}  criterion {key:<3} {e['title']}  ({e['n']} tests)")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ghz():
    return oracles.ghz()


@pytest.fixture
def zero_state():
    return oracles.product()


@pytest.fixture
def product_state(rng):
    return oracles.product(rng)
