import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

CRITERIA = {
    1: "Ext oracle equivalence (dim <= 3, both algebras)",
    2: "Dimension facts (pd S_b, pd S_1, fd = pd)",
    3: "Zig-zag subresolution certificates (>= 50 per algebra)",
    4: "dw-filtration certificates (>= 50 random complexes)",
    5: "ex-filtration certificates with per-step exactness (>= 50)",
    6: "Staircase zig-zag, both tracks, every basis element",
    7: "Purity of pure_closure against test modules of dim <= 3",
    8: "Lifting: 100 guaranteed squares, 20 obstructed",
    9: "Compatibility identity on the 12-object universe",
    10: "Certificate robustness: 200 single-field corruptions",
}

_outcomes = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def _criterion(item):
    mark = item.get_closest_marker("acceptance")
    return mark.args[0] if mark and mark.args else None


def pytest_collection_modifyitems(items):
    for item in items:
        n = _criterion(item)
        if n is not None:
            item.user_properties.append(("criterion", n))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(crit, "passed")
        now = "passed" if report.passed else ("skipped" if report.skipped else "failed")
        _outcomes[crit] = now if prev == "passed" else prev


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, text in CRITERIA.items():
        status = _outcomes.get(n)
        label = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP", None: "NOT RUN"}[status]
        terminalreporter.write_line(f"[{label:>7}] {n:>2}. {text}")
