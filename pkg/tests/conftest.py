import sys

# Criterion outcome lines collected by test_acceptance, printed in the
# terminal summary so every run shows one pass/fail line per criterion.
CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
