"""Shared helpers for the test suite."""

from __future__ import annotations

import pytest

from fatpoints import QQ, QW, Ideal, library, parse_polynomial
from fatpoints.schemes import singular_locus


def poly(text, domain=QQ, nvars=3):
    return parse_polynomial(text, domain, nvars)


def ideal(*texts, domain=QQ, nvars=3):
    return Ideal([poly(t, domain, nvars) for t in texts])


@pytest.fixture(scope="session")
def dual_hesse():
    A = library.arrangement("dual_hesse")
    return A, singular_locus(A).support()


@pytest.fixture(scope="session")
def example33():
    A = library.arrangement("xyxmyz")
    return A, singular_locus(A)


@pytest.fixture(scope="session")
def triangle():
    return library.load("triangle")


@pytest.fixture(scope="session")
def qw():
    return QW


# -- acceptance reporting ------------------------------------------------------
# Tests marked ``criterion(n)`` get one PASS/FAIL line in the terminal summary;
# details come from ``record_property("detail", ...)``.

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
        store = item.config.stash.setdefault(_CRITERIA, {})
        store[mark.args[0]] = (rep.outcome, item.name, detail)


_CRITERIA = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_CRITERIA, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        outcome, name, detail = store[n]
        status = "PASS" if outcome == "passed" else outcome.upper()
        if outcome == "failed":
            status = "FAIL"
        line = f"criterion {n:2d}: {status}  {name}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
