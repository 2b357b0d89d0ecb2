import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

CRITERIA = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.passed and not hasattr(report, "wasxfail"):
            CRITERIA[name] = "PASS"
        elif hasattr(report, "wasxfail"):
            CRITERIA[name] = "FAIL (known, recorded in the decision notes)"
        else:
            CRITERIA[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA):
        num = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line("criterion %s %-28s %s" % (num, label, CRITERIA[name]))
