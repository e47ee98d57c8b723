import time
from contextlib import contextmanager

import pytest

_LINES_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES_KEY] = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_LINES_KEY]

    @contextmanager
    def check(number, label):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            lines.append((number, f"FAIL  {number:>2}. {label}  ({type(exc).__name__}: {exc})"))
            print(lines[-1][1])
            raise
        elapsed = time.perf_counter() - start
        lines.append((number, f"PASS  {number:>2}. {label}  [{elapsed:.2f}s]"))
        print(lines[-1][1])

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
