import numpy as np
import pytest

from appAqcTensor.ansatz import BrickworkAnsatz
from appAqcTensor.ansatz import brickwork_pairs
from appCircuit.metrics import cnot_metrics
from appCore.exceptions import ConfigurationError
from appCore.exceptions import DimensionError


@pytest.mark.parametrize(
    ("n", "pairs"),
    [
        (2, [(0, 1)]),
        (5, [(0, 1), (2, 3), (1, 2), (3, 4)]),
        (6, [(0, 1), (2, 3), (4, 5), (1, 2), (3, 4)]),
    ],
)
def test_brickwork_pairs(n, pairs):
    assert brickwork_pairs(n) == pairs


@pytest.mark.parametrize("length", [4, 9])
def test_one_layer_costs(length, rng):
    ansatz = BrickworkAnsatz(length, 1)
    m = cnot_metrics(ansatz.circuit(rng.uniform(-np.pi, np.pi, ansatz.n_params)))
    assert m.depth == 6
    assert m.count == 3 * (length - 1)


def test_layers_repeat_the_pattern():
    ansatz = BrickworkAnsatz(6, 3)
    assert ansatz.blocks == brickwork_pairs(6) * 3
    assert ansatz.n_params == 15 * 15
    assert ansatz.grown().layers == 4


def test_connectivity_replaces_the_brickwork():
    ansatz = BrickworkAnsatz(4, 2, connectivity=((0, 3), (1, 2)))
    assert ansatz.blocks == [(0, 3), (1, 2), (0, 3), (1, 2)]


def test_zero_layers_is_only_the_single_qubit_layer():
    ansatz = BrickworkAnsatz(3, 0)
    assert ansatz.n_params == 0
    assert len(ansatz.circuit([]).gates) == 3


@pytest.mark.parametrize(
    "build",
    [
        lambda: BrickworkAnsatz(4, -1),
        lambda: BrickworkAnsatz(4, 1, connectivity=((0, 4),)),
        lambda: BrickworkAnsatz(4, 1, initial_layer=[np.eye(2)]),
        lambda: BrickworkAnsatz(4, 1).split(np.zeros(3)),
    ],
)
def test_invalid_ansatz(build):
    with pytest.raises((ConfigurationError, DimensionError)):
        build()
