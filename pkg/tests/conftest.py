import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def repo_root():
    return os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion; printed at the end of the run."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])

    def record(number, title, ok, seconds, limit=None, detail=""):
        budget = f" (limit {limit:.0f}s)" if limit is not None else ""
        status = "PASS" if ok else "FAIL"
        extra = f" [{detail}]" if detail else ""
        line = f"{status} criterion {number}: {title} {seconds:.2f}s{budget}{extra}"
        lines.append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
