from __future__ import annotations

import pytest

from ree_sylow.field import make_field
from ree_sylow.group import ReeSylow


@pytest.fixture(scope="session")
def F0():
    return make_field(0)


@pytest.fixture(scope="session")
def F1():
    return make_field(1)


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def G0():
    return ReeSylow.from_m(0)


@pytest.fixture(scope="session")
def G1():
    return ReeSylow.from_m(1)


# --- acceptance summary ------------------------------------------------------

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    num, text = mark.args
    entry = _criteria.setdefault(num, {"text": text, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {num}: {e['text']}")
