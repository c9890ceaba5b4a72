import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus():
    from pring.catalog import ring_corpus
    return ring_corpus(6)


@pytest.fixture(scope="session")
def small_corpus():
    from pring.catalog import ring_corpus
    return [A for A in ring_corpus(6) if A.size <= 4]


@pytest.fixture(autouse=True)
def _default_budgets():
    # the CLI installs its caps process-wide; put the defaults back after each test
    from pring.config import WorkspaceConfig
    yield
    WorkspaceConfig().apply()


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_lines(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("]")[0].split()[-1])):
            terminalreporter.write_line(line)
