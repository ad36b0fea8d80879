import numpy as np
import pytest

from cann.energy import N_PARAMS

ACCEPTANCE_LINES: list[str] = []


def central_difference(f, x, step=1e-6):
    """Central finite difference of a scalar function of a flat vector."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.size)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = step
        out[k] = (f(x + e) - f(x - e)) / (2 * step)
    return out


def relative_error(a, b, floor=1e-12):
    """Norm-wise relative error ``|a - b| / max(|a|, |b|)`` of two vectors.

    Component-wise ratios are dominated by finite-difference round-off on
    entries many orders below the function value, so the whole vector is
    compared at once.
    """
    a, b = np.ravel(np.asarray(a, float)), np.ravel(np.asarray(b, float))
    scale = max(np.linalg.norm(a), np.linalg.norm(b), floor)
    return float(np.linalg.norm(a - b) / scale)


def random_weights(rng, size=N_PARAMS):
    """Non-negative weights with exponents kept moderate on I in [3, 60]."""
    theta = rng.uniform(0.0, 0.5, size)
    for k in (1, 7):
        theta[k] = rng.uniform(0.0, 0.05)
    for k in (4, 10):
        theta[k] = rng.uniform(0.0, 0.002)
    return theta


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
