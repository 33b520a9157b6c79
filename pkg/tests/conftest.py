import pytest

_criteria = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is not None:
        _criteria.append((marker, report.outcome, dict(report.user_properties).get("detail", "")))


@pytest.fixture
def criterion(request, record_property):
    """Tag an acceptance test so the terminal summary lists it."""
    m = request.node.get_closest_marker("criterion")
    record_property("criterion", f"C{m.args[0]} {m.args[1]}")

    def detail(text):
        record_property("detail", text)

    return detail


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(_criteria, key=lambda c: int(c[0].split()[0][1:])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f" -- {detail}" if detail else ""))
