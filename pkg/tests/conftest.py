import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the per-criterion acceptance lines after the run summary."""
    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "ACCEPTANCE_LINES", None):
            terminalreporter.section("acceptance criteria")
            for line in mod.ACCEPTANCE_LINES:
                terminalreporter.line(line)
            break
