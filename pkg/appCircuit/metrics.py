"""CNOT depth and count on an as-soon-as-possible wire schedule."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from appCircuit.circuit import Circuit
from appCircuit.gates import Gate
from appCircuit.gates import GateKind
from appCircuit.kak import kak_decompose

SWAP_COST = 3
FROM_ZERO_CAP = 2


@dataclass(frozen=True)
class CnotMetrics:
    depth: int
    count: int

    def to_dict(self) -> dict:
        return {"cnot_depth": self.depth, "cnot_count": self.count}


def qsd_cnot_count(n_qubits: int) -> int:
    """CNOT count of a generic n-qubit unitary by quantum Shannon decomposition."""
    q = n_qubits
    return round(23 / 48 * 4**q - 3 / 2 * 2**q + 4 / 3)


@lru_cache(maxsize=4096)
def _two_qubit_cost(key: bytes) -> int:
    matrix = np.frombuffer(key, dtype=complex).reshape(4, 4)
    return kak_decompose(matrix).cnot_cost


def cnot_cost(gate: Gate) -> int:
    if gate.n_qubits == 1:
        return 0
    if gate.kind in (GateKind.CNOT, GateKind.CZ):
        return 1
    if gate.kind == GateKind.SWAP:
        return SWAP_COST
    if gate.n_qubits == 2:  # noqa: PLR2004
        matrix = np.ascontiguousarray(gate.unitary(), dtype=complex)
        cost = _two_qubit_cost(matrix.tobytes())
        return min(cost, FROM_ZERO_CAP) if gate.from_zero else cost
    return qsd_cnot_count(gate.n_qubits)


def cnot_metrics(c: Circuit) -> CnotMetrics:
    """
    Each gate occupies all of its wires for ``cnot_cost`` consecutive CNOT
    slots, starting as soon as every wire is free. Cost-0 gates are skipped.
    """
    wire_time = [0] * c.n_qubits
    count = 0
    for g in c.gates:
        cost = cnot_cost(g)
        if cost == 0:
            continue
        start = max(wire_time[q] for q in g.qubits)
        for q in g.qubits:
            wire_time[q] = start + cost
        count += cost
    return CnotMetrics(depth=max(wire_time, default=0), count=count)
