import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unit(rng, n):
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return x / np.linalg.norm(x)


def ring_schwarzian(F, z, points=64):
    """Schwarzian from Cauchy-integral derivatives on a small ring around ``z``.

    Works on the closed-form map only; the ring radius stays inside the
    exterior of the unit disk, where ``F`` is holomorphic.
    """
    rho = 0.5 * (abs(z) - 1)
    w = np.exp(2j * np.pi * np.arange(points) / points)
    vals = F(z + rho * w)
    # k-th derivative = k!/(2 pi i) \oint F/(s - z)^{k+1} ds, trapezoid in the angle
    d1, d2, d3 = (np.mean(vals * w**-k) * math.factorial(k) / rho**k for k in (1, 2, 3))
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
