import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_log import LINES  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(LINES, key=lambda l: _order(l)):
        terminalreporter.write_line(line)


def _order(line):
    # "criterion 3b: ..." -> (3, "b")
    tag = line.split(":", 1)[0].split()[-1]
    num = "".join(ch for ch in tag if ch.isdigit())
    return int(num or 0), tag
