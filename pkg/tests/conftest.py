import numpy as np
import pytest

from beaconloc import fig3_scene, fig4_scene


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def fig3():
    return fig3_scene()


@pytest.fixture
def fig4():
    return fig4_scene()


def random_scene_points(rng, n, min_sep=0.5):
    """Estimator pairs on the floor of a 4 m room and LEDs on the ceiling."""
    out = []
    while len(out) < n:
        a1 = np.r_[rng.uniform(0, 4, 2), 0.0]
        a2 = np.r_[rng.uniform(0, 4, 2), 0.0]
        if np.linalg.norm(a2 - a1) < min_sep:
            continue
        t = np.r_[rng.uniform(0, 4, 2), 4.0]
        out.append((a1, a2, t))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
