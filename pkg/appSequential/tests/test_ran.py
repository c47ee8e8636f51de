import numpy as np
import pytest

from appCore.exceptions import ConfigurationError
from appExperiments.targets import random_brickwork_target
from appSequential.ran import ran_layer_sweep
from appSequential.ran import ran_prepare
from appSimulator.simulator import simulate
from appSpin.dmrg import xxz_ground_state
from appSpin.params import DmrgConfig
from appTensor.mps import fidelity
from appTensor.mps import random_mps
from tests.factories import XXZParamsFactory


def test_one_layer_prepares_a_chi_two_target(rng):
    target = random_brickwork_target(8, rng)
    c, f = ran_prepare(target, 1)
    assert f == pytest.approx(1.0, abs=1e-8)
    assert fidelity(simulate(c).state, target) == pytest.approx(1.0, abs=1e-8)


def test_reported_fidelity_is_the_circuit_fidelity(rng):
    target = random_mps(8, 4, rng)
    c, f = ran_prepare(target, 3)
    assert 0.0 < f < 1.0
    assert fidelity(simulate(c).state, target) == pytest.approx(f, abs=1e-8)


def test_layer_sweep_improves_and_costs_more(rng):
    rows = ran_layer_sweep(random_mps(8, 4, rng), 4)
    assert [r["layers"] for r in rows] == [1, 2, 3, 4]
    fidelities = np.array([r["fidelity"] for r in rows])
    assert np.all(np.diff(fidelities) >= -1e-9)
    counts = [r["cnot_count"] for r in rows]
    assert counts == sorted(counts)
    assert rows[0]["cnot_count"] == 2 * 7


def test_at_least_one_layer(rng):
    with pytest.raises(ConfigurationError):
        ran_prepare(random_mps(4, 2, rng), 0)


@pytest.mark.slow
def test_layer_sweep_on_the_long_chain_ground_state():
    ground = xxz_ground_state(XXZParamsFactory(length=50, jz=2.5), DmrgConfig())
    rows = ran_layer_sweep(ground.state, 5)
    fidelities = [row["fidelity"] for row in rows]
    assert fidelities[0] == pytest.approx(0.891, abs=1e-2)
    assert fidelities[4] == pytest.approx(0.973, abs=1e-2)
    assert np.all(np.diff(fidelities) >= -1e-9)
