import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# One summary line per acceptance criterion, from tests named test_criterion_NN_*.
_criteria: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    failed = report.failed or (report.when == "call" and report.skipped)
    _criteria[number] = _criteria.get(number, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status = "PASS" if _criteria[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}")
