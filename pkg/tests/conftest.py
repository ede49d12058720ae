import numpy as np
import pytest

from multiphoton import AtomFieldState, FieldVector


def random_state(rng, n_max, free_top=10):
    """Normalized random atom-field state with empty top ``free_top`` levels."""
    vec = rng.normal(size=2 * (n_max + 1)) + 1j * rng.normal(size=2 * (n_max + 1))
    half = n_max + 1
    keep = max(half - free_top, 1)
    vec[keep:half] = 0
    vec[half + keep :] = 0
    vec /= np.linalg.norm(vec)
    return AtomFieldState(FieldVector(vec[:half]), FieldVector(vec[half:]))


def same_up_to_phase(u, v, tol):
    """|<u|v>| == 1 for unit vectors u, v."""
    return abs(abs(np.vdot(u, v)) - 1.0) <= tol


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


ACCEPTANCE_LINES = []


def report(criterion, passed, detail):
    """Record one acceptance line; printed in the terminal summary."""
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
