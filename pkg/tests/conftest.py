import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# acceptance tests are named test_criterion_<N>[_...]; several tests may share N
_CRITERION = re.compile(r"::test_criterion_(\d+)")
_results: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or not report.passed:
        _results[num] = _results.get(num, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _results[num] else 'FAIL'}")
