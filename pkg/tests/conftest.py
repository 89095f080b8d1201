import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# hypothesis: deterministic and bounded
from hypothesis import HealthCheck, settings

settings.register_profile(
    "qradical", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qradical")

_criteria: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(tag): acceptance criterion covered by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(mark.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_criteria, key=lambda t: int(t[2:])):
        results = _criteria[tag]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{tag}: {status} ({sum(results)}/{len(results)} checks)")
