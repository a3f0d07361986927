import os
import sys
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Context manager that records one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash[_LINES]

    @contextmanager
    def run(number, title, budget_s=None):
        info = {"detail": ""}
        start = time.perf_counter()
        try:
            yield info
            elapsed = time.perf_counter() - start
            if budget_s is not None:
                assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"
        except BaseException as exc:
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            line = f"criterion {number:>2}: FAIL  {title} -- {msg[:160]}"
            lines.append(line)
            print(line)
            raise
        detail = f"; {info['detail']}" if info["detail"] else ""
        line = f"criterion {number:>2}: PASS  {title} ({elapsed:.1f}s{detail})"
        lines.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
