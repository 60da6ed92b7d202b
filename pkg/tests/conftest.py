import sys

import pytest

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_VERDICTS: dict[int, tuple[str, bool, str]] = {}


class Criterion:
    """Records one acceptance verdict; printed in the terminal summary."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        _VERDICTS[number] = (title, False, "did not finish")

    def record(self, ok: bool, detail: str):
        _VERDICTS[self.number] = (self.title, ok, detail)
        return ok


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    return Criterion(*marker.args)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        title, ok, detail = _VERDICTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
