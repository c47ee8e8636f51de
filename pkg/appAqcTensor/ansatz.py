from dataclasses import dataclass
from dataclasses import field

import numpy as np

from appCircuit.circuit import Circuit
from appCircuit.gates import su4
from appCircuit.gates import u1
from appCircuit.su4 import N_PARAMS
from appCore.exceptions import ConfigurationError
from appCore.exceptions import DimensionError


def brickwork_pairs(n_qubits: int) -> list[tuple[int, int]]:
    """One layer: (0,1), (2,3), ... then (1,2), (3,4), ..."""
    return [(i, i + 1) for i in range(0, n_qubits - 1, 2)] + [(i, i + 1) for i in range(1, n_qubits - 1, 2)]


@dataclass
class BrickworkAnsatz:
    """
    A fixed single-qubit layer followed by ``layers`` layers of SU4 blocks.

    Blocks follow the brickwork pattern, or ``connectivity`` (any pair list)
    repeated once per layer.
    """

    n_qubits: int
    layers: int
    connectivity: tuple | None = None
    initial_layer: list = field(default_factory=list)

    def __post_init__(self):
        if self.layers < 0:
            msg = f"layers must be >= 0, got {self.layers}."
            raise ConfigurationError(msg)
        if not self.initial_layer:
            self.initial_layer = [np.eye(2, dtype=complex) for _ in range(self.n_qubits)]
        if len(self.initial_layer) != self.n_qubits:
            msg = f"Initial layer has {len(self.initial_layer)} unitaries for {self.n_qubits} qubits."
            raise DimensionError(msg)
        pairs = brickwork_pairs(self.n_qubits) if self.connectivity is None else list(self.connectivity)
        for i, j in pairs:
            if max(i, j) >= self.n_qubits:
                msg = f"Pair {(i, j)} does not fit {self.n_qubits} qubits."
                raise DimensionError(msg)
        self.blocks = pairs * self.layers

    @property
    def n_params(self) -> int:
        return N_PARAMS * len(self.blocks)

    def split(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.size != self.n_params:
            msg = f"Expected {self.n_params} parameters, got {params.size}."
            raise DimensionError(msg)
        return params.reshape(len(self.blocks), N_PARAMS)

    def initial_gates(self) -> list:
        return [u1(q, m) for q, m in enumerate(self.initial_layer)]

    def block_gates(self, params) -> list:
        return [su4(i, j, p) for (i, j), p in zip(self.blocks, self.split(params), strict=True)]

    def circuit(self, params) -> Circuit:
        return Circuit(self.n_qubits, tuple(self.initial_gates() + self.block_gates(params)))

    def grown(self, extra_layers: int = 1) -> "BrickworkAnsatz":
        return BrickworkAnsatz(self.n_qubits, self.layers + extra_layers, self.connectivity, list(self.initial_layer))
