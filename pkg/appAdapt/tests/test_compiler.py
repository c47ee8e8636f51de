import numpy as np
import pytest

from appAdapt.compiler import compile as adapt_compile
from appAdapt.compiler import starting_circuit
from appAdapt.config import AdaptConfig
from appCircuit.circuit import Circuit
from appCore.exceptions import ConfigurationError
from appCore.exceptions import DimensionError
from appExperiments.targets import random_brickwork_target
from appSimulator.simulator import simulate
from appTensor.mps import fidelity
from appTensor.mps import random_mps
from tests.factories import AdaptConfigFactory


@pytest.mark.parametrize(
    "kwargs",
    [
        {"epsilon": 0.0},
        {"coupling": "ring"},
        {"starting_circuit": "user"},
        {"rotosolve_window": 0},
        {"max_blocks": -1},
        {"gradient_axes": ("Y",) * 5},
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ConfigurationError):
        AdaptConfig(**kwargs)


def test_threshold_defaults_to_the_project_setting(settings):
    assert AdaptConfig().sim_threshold == settings.MPSC["ADAPT_SIM_THRESHOLD"]
    assert AdaptConfig().block_cap(7) == 35


def test_chi1_start_prepares_the_product_approximation(rng):
    target = random_brickwork_target(5, rng)
    start, reference = starting_circuit(target, AdaptConfigFactory())
    assert all(g.n_qubits == 1 for g in start.gates)
    assert fidelity(simulate(start).state, reference) == pytest.approx(1.0)


def test_user_start_must_fit(rng):
    cfg = AdaptConfigFactory(starting_circuit="user", user_circuit=Circuit(3))
    with pytest.raises(DimensionError):
        starting_circuit(random_mps(4, 2, rng), cfg)


def test_compiles_a_brickwork_target(rng):
    target = random_brickwork_target(6, rng)
    result = adapt_compile(target, AdaptConfigFactory())
    assert result.converged
    assert result.method == "adapt"
    assert result.fidelity >= 0.99
    assert result.extra["verified_fidelity"] == pytest.approx(result.fidelity, abs=1e-8)
    assert fidelity(simulate(result.circuit).state, target) >= 0.99
    costs = [c for _, c in result.cost_trace]
    assert np.all(np.diff(costs) <= 1e-9)
    assert result.blocks_added == len(result.cost_trace) - 1


def test_block_cap_stops_without_convergence(rng):
    result = adapt_compile(random_mps(6, 4, rng), AdaptConfigFactory(epsilon=1e-6, max_blocks=2))
    assert not result.converged
    assert result.blocks_added == 2


def test_rotosolve_window_freezes_old_blocks(rng):
    target = random_brickwork_target(5, rng)
    result = adapt_compile(target, AdaptConfigFactory(rotosolve_window=1, max_blocks=6))
    assert result.blocks_added <= 6
    assert result.extra["verified_fidelity"] == pytest.approx(result.fidelity, abs=1e-8)


def test_all_to_all_coupling_from_zero(rng):
    target = random_brickwork_target(4, rng)
    cfg = AdaptConfigFactory(coupling="all-to-all", starting_circuit="none", max_blocks=12)
    result = adapt_compile(target, cfg)
    assert result.extra["config"]["coupling"] == "all-to-all"
    assert result.extra["verified_fidelity"] == pytest.approx(result.fidelity, abs=1e-8)
