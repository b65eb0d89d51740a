"""Shared pytest hooks: print one PASS/FAIL line per acceptance criterion."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    seen = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            status = "PASS" if outcome == "passed" else "FAIL"
            if seen.get(name) != "FAIL":
                seen[name] = status
    if seen:
        terminalreporter.section("acceptance criteria")
        for name, status in seen.items():
            terminalreporter.write_line(f"{status}  {name}")
