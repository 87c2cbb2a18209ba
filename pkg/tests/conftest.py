"""Print the acceptance verdicts, one line per criterion, after the test run."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
    passed = sum(line.startswith("[PASS]") for line in lines.values())
    terminalreporter.write_line(f"{passed}/{len(lines)} criteria pass")
