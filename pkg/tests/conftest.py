import re

_AC = re.compile(r"test_acceptance\.py::test_ac(\d\d)_(\w+)")
_results: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    key, name = m.groups()
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[key] = ("PASS" if report.passed else "FAIL", name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results):
        verdict, name = _results[key]
        terminalreporter.write_line(f"AC{key} {verdict} {name}")
