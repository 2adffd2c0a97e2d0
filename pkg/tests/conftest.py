import numpy as np
import pytest

from noma_drn.phy import PowerAllocation
from noma_drn.simulator import Links, ScenarioConfig

FIG2_OMEGAS = (2, 10, 9, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def fig2_pa():
    return PowerAllocation(0.9602, 0.0398, 0.8011)


@pytest.fixture
def fig2_cfg(fig2_pa):
    return ScenarioConfig(fig2_pa, Links.uniform(1, FIG2_OMEGAS), seed=42, trials=20_000,
                          snr_grid_db=(0, 10, 20), name="fig2")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
