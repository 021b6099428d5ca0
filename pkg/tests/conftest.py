import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_RESULTS: dict[int, list[bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = [m for m in report.keywords if m.startswith("criterion_")]
    for m in marker:
        ACCEPTANCE_RESULTS.setdefault(int(m.split("_")[1]), []).append(report.outcome == "passed")


def pytest_configure(config):
    for k in range(1, 12):
        config.addinivalue_line("markers", f"criterion_{k}: acceptance criterion {k}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in range(1, 12):
        results = ACCEPTANCE_RESULTS.get(k)
        if results is None:
            continue
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status} ({sum(results)}/{len(results)} tests)")
