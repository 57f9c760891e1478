import pytest

from ruptureopt import _backend

_criteria = {}


@pytest.fixture(params=_backend.AVAILABLE)
def backend(request):
    return request.param


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    ok = report.outcome == "passed"
    _criteria.setdefault(crit, []).append((ok, report.nodeid))


@pytest.fixture(autouse=True)
def _tag_criterion(request, record_property):
    m = request.node.get_closest_marker("criterion")
    if m is not None:
        record_property("criterion", m.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_criteria):
        results = _criteria[crit]
        failed = [nid for ok, nid in results if not ok]
        status = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {status} ({len(results) - len(failed)}/{len(results)} checks)")
        for nid in failed:
            terminalreporter.write_line(f"    failed: {nid}")
