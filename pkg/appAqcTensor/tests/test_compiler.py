import math

import numpy as np
import pytest

from appAqcTensor.ansatz import BrickworkAnsatz
from appAqcTensor.compiler import compile as tensor_compile
from appAqcTensor.compiler import compile_with_layer_sweep
from appAqcTensor.compiler import pad_parameters
from appAqcTensor.config import TensorConfig
from appAqcTensor.initialization import initial_log10_fidelity
from appAqcTensor.initialization import initialize
from appAqcTensor.initialization import state_unitary
from appAqcTensor.optimizers import OptimizationTrace
from appAqcTensor.optimizers import minimize_adam
from appAqcTensor.optimizers import minimize_lbfgs
from appCore.exceptions import ConfigurationError
from appExperiments.targets import random_brickwork_target
from appSimulator.simulator import simulate
from appTensor.mps import fidelity
from appTensor.mps import random_mps
from appTensor.truncation import TruncationPolicy
from tests.factories import TensorConfigFactory


def _quadratic(x):
    return float(np.sum((x - 0.5) ** 2)), 2 * (x - 0.5)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"epsilon": 1.0},
        {"optimizer": "sgd"},
        {"initialization": "zeros"},
        {"max_iterations": -1},
        {"connectivity": ((1, 1),)},
        {"sim_threshold": -1.0},
    ],
)
def test_invalid_configs(kwargs):
    with pytest.raises(ConfigurationError):
        TensorConfig(**kwargs)


def test_state_unitary_prepares_the_vector():
    v = np.array([0.6, 0.8j])
    u = state_unitary(v)
    assert np.allclose(u @ np.array([1, 0]), v)
    assert np.allclose(u.conj().T @ u, np.eye(2))


@pytest.mark.parametrize("minimize", [minimize_lbfgs, minimize_adam])
def test_optimizers_stop_once_below_epsilon(minimize):
    trace = OptimizationTrace(epsilon=1e-3)
    minimize(_quadratic, np.zeros(4), trace, gtol=1e-12, max_iterations=5000)
    assert trace.reached
    assert trace.best_cost <= 1e-3
    assert [k for k, _ in trace.costs] == list(range(len(trace.costs)))
    assert trace.evaluations >= len(trace.costs)


def test_initializations(rng):
    target = random_brickwork_target(6, rng)
    policy = TruncationPolicy()
    values = {}
    for strategy in ("chi1", "identity", "random"):
        ansatz, params = initialize(target, 1, TensorConfigFactory(initialization=strategy))
        assert params.size == ansatz.n_params
        values[strategy] = initial_log10_fidelity(target, ansatz, params, policy)
    assert values["chi1"] >= values["identity"]
    assert values["chi1"] <= 0.0
    assert math.isfinite(values["random"])


def test_one_layer_brickwork_metrics_and_fidelity(rng):
    length = 6
    target = random_brickwork_target(length, rng)
    result = tensor_compile(target, 1, TensorConfigFactory())
    assert result.method == "aqc-tensor"
    assert result.cnot_depth == 6
    assert result.cnot_count == 3 * (length - 1)
    assert result.extra["verified_fidelity"] == pytest.approx(result.fidelity, abs=1e-8)
    assert result.fidelity >= 1.0 - result.cost_trace[0][1] - 1e-12
    assert fidelity(simulate(result.circuit).state, target) == pytest.approx(result.fidelity, abs=1e-8)


def test_zero_iterations_return_the_starting_point(rng):
    target = random_mps(5, 2, rng)
    result = tensor_compile(target, 2, TensorConfigFactory(max_iterations=0))
    assert len(result.cost_trace) == 1
    assert np.allclose(result.extra["params"], 0.0)


def test_cost_trace_counts_iterations_not_evaluations(rng):
    target = random_mps(5, 2, rng)
    result = tensor_compile(target, 2, TensorConfigFactory(epsilon=1e-12, max_iterations=3))
    indices = [k for k, _ in result.cost_trace]
    assert indices == list(range(len(indices)))
    assert 1 <= len(indices) <= 4
    assert result.extra["evaluations"] >= len(indices)


def test_padding_keeps_the_solution(rng):
    ansatz = BrickworkAnsatz(5, 1)
    grown = ansatz.grown()
    params = rng.uniform(size=ansatz.n_params)
    padded = pad_parameters(params, ansatz, grown, rng, 1e-6)
    assert padded.size == grown.n_params
    assert np.array_equal(padded[: params.size], params)
    extra = padded[params.size :].reshape(-1, 15)
    assert np.all(extra[:, 6:9] == 0.0)
    assert np.max(np.abs(extra)) < 1e-4


def test_layer_sweep_rows(rng):
    target = random_mps(6, 4, rng)
    result, rows = compile_with_layer_sweep(target, 2, TensorConfigFactory(epsilon=1e-9, max_iterations=50))
    assert [r["layers"] for r in rows] == [1, 2]
    assert result.extra["layers"] == 2
    assert rows[1]["cnot_count"] > rows[0]["cnot_count"]
