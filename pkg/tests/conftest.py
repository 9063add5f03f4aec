import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tfcalc.grid import Grid, random_test_signal

settings.register_profile(
    "tfcalc", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("tfcalc")


@pytest.fixture
def g16():
    """Self-dual one-dimensional grid, N = L**2."""
    return Grid(1, 16, 4.0)


@pytest.fixture
def g64():
    return Grid(1, 64, 8.0)


def rsig(grid, *key, **kw):
    return random_test_signal(list(key), grid, **kw)


def brute_stft(f, g):
    """Definition of the STFT summed with explicit loops, d = 1."""
    grid = f.grid
    N, h = grid.N, grid.spacing
    t = grid.axis
    out = np.zeros((N, N), dtype=complex)
    for m in range(N):
        gs = np.roll(g.values, m - N // 2)  # g(t - x_m)
        for k, w in enumerate(grid.dual_axis):
            out[m, k] = h * np.sum(f.values * np.conj(gs) * np.exp(-2j * np.pi * w * t))
    return out


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
