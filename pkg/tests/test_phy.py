import itertools

import numpy as np
import pytest

from noma_drn.errors import ConfigurationError
from noma_drn.phy import PowerAllocation, downlink_rx, superpose, uplink_rx


def test_degenerate_allocation_passes_x1_through():
    pa = PowerAllocation(1.0, 0.0, 0.5, validate=False)
    assert superpose(0.3 - 0.2j, -1, pa) == 0.3 - 0.2j


def test_superpose_reference_value(fig2_pa):
    # sqrt(0.9602) - sqrt(0.0398), evaluated in 30-digit decimal
    assert superpose(1, -1, fig2_pa) == pytest.approx(0.7803985804381079, abs=1e-12)


def test_unit_energy_superposition(fig2_pa):
    energies = [abs(superpose(a, b, fig2_pa)) ** 2 for a, b in itertools.product((1, -1), repeat=2)]
    assert np.mean(energies) == pytest.approx(1, abs=1e-12)


def test_superpose_linear(fig2_pa):
    a, b, c = 0.3 + 1j, -0.7j, 2.0
    assert superpose(a + c, b, fig2_pa) - superpose(c, 0, fig2_pa) == pytest.approx(
        superpose(a, b, fig2_pa), abs=1e-12)


def test_downlink():
    assert downlink_rx(0.5 - 0.1j, 1, 1, 0) == 0.5 - 0.1j
    assert downlink_rx(1, 2j, 4, 0) == 4j
    assert downlink_rx(0.7804, 1, 1, 0.1) == pytest.approx(0.8804, abs=1e-12)


def test_uplink():
    assert uplink_rx(1, -1, 1, 0, 1, 1, 0) == 1
    assert uplink_rx(1, -1, 1, 1, 4, 1, 0) == 1
    assert uplink_rx(1, 1, 1, 1, 0.8011, 0.1989, 0) == pytest.approx(1.3410239608801803, abs=1e-12)


def test_relay_split(fig2_pa):
    assert fig2_pa.pr1 == pytest.approx(0.8011)
    assert fig2_pa.pr2 == pytest.approx(0.1989)


def test_average_energy_per_phase(fig2_pa):
    rng = np.random.default_rng(0)
    x1 = rng.choice([1.0, -1.0], 200_000)
    x2 = rng.choice([1.0, -1.0], 200_000)
    ps, pr1, pr2 = 3.0, 0.8 * 2, 0.2 * 2
    phase1 = np.abs(np.sqrt(ps) * superpose(x1, x2, fig2_pa)) ** 2
    phase2 = pr1 * np.abs(x1) ** 2 + pr2 * np.abs(x2) ** 2
    assert phase1.mean() == pytest.approx(ps, rel=0.01)
    assert phase2.mean() == pytest.approx(pr1 + pr2, rel=0.01)


@pytest.mark.parametrize("a1,a2,beta", [(0.4, 0.6, 0.5), (0.9, 0.2, 0.5), (0.9, 0.1, 1.0), (0.9, 0.1, 0.0)])
def test_invalid_allocation(a1, a2, beta):
    with pytest.raises(ConfigurationError):
        PowerAllocation(a1, a2, beta)
