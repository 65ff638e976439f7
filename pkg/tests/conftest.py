import pytest

from modburgers.solver import SimConfig, run

_RUNS = {}
ACCEPTANCE_LINES = []


def reference_run(alpha, **overrides):
    """Run with the reference parameters (L=10, h=0.02, dt=1e-4), cached for the whole session."""
    key = (alpha, tuple(sorted(overrides.items())))
    if key not in _RUNS:
        _RUNS[key] = run(SimConfig(alpha=alpha, **overrides), keep_states=True)
    return _RUNS[key]


@pytest.fixture(scope="session")
def runs():
    return reference_run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
