import sys


def pytest_terminal_summary(terminalreporter):
    # surface the acceptance verdict lines even under output capture
    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for line in verdicts:
            terminalreporter.write_line(line)
