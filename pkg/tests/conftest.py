import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = []


def clear_caches():
    """Drop every lru_cache in czv so timings start cold."""
    import czv.arith
    import czv.coalgebra
    import czv.cones
    import czv.germs
    import czv.renormalise
    for mod in (czv.arith, czv.cones, czv.coalgebra, czv.germs, czv.renormalise):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


@pytest.fixture
def cold():
    clear_caches()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::test_criterion_")[1]
        num, _, label = name.partition("_")
        _CRITERIA.append((int(num), label.replace("_", " "), report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, label, outcome, dur in sorted(_CRITERIA):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}  {mark}  {label}  ({dur:.2f} s)")
