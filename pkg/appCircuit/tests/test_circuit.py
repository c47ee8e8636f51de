import numpy as np
import pytest
from scipy.stats import unitary_group

from appCircuit.circuit import Circuit
from appCircuit.circuit import consolidate
from appCircuit.circuit import inverse
from appCircuit.circuit import route_nearest_neighbour
from appCircuit.circuit import simplify
from appCircuit.gates import GateKind
from appCircuit.gates import cnot
from appCircuit.gates import cz
from appCircuit.gates import rotation
from appCircuit.gates import su4
from appCircuit.gates import u2
from appCore.exceptions import GateValidationError


def _equal_up_to_phase(a: np.ndarray, b: np.ndarray) -> bool:
    return abs(abs(np.trace(a.conj().T @ b)) / a.shape[0] - 1) < 1e-10


def _mixed_circuit(rng) -> Circuit:
    return Circuit(
        4,
        (
            su4(0, 1, rng.uniform(-1, 1, 15)),
            rotation("x", 0, 0.3),
            cnot(1, 0),
            cnot(1, 2),
            rotation("z", 2, -0.4),
            cz(2, 3),
            u2(3, 2, unitary_group.rvs(4, random_state=3)),
        ),
    )


def test_invalid_circuits():
    with pytest.raises(GateValidationError):
        Circuit(0)
    with pytest.raises(GateValidationError):
        Circuit(2, (cnot(1, 2),))
    with pytest.raises(GateValidationError):
        Circuit(3).compose(Circuit(4))


def test_compose_appends_in_order():
    a = Circuit(2, (cnot(0, 1),))
    b = Circuit(2, (rotation("x", 1, 0.1),))
    assert a.compose(b).gates == (cnot(0, 1), rotation("x", 1, 0.1))
    assert len(a.append(cz(0, 1))) == 2


def test_inverse_circuit(rng):
    c = _mixed_circuit(rng)
    assert np.allclose(inverse(c).unitary() @ c.unitary(), np.eye(16), atol=1e-10)


def test_consolidate_merges_pair_runs(rng):
    c = _mixed_circuit(rng)
    merged = consolidate(c)
    assert [g.kind for g in merged.gates] == [GateKind.U2] * 3
    assert np.allclose(merged.unitary(), c.unitary(), atol=1e-10)


def test_simplify_drops_product_blocks():
    a, b = unitary_group.rvs(2, random_state=1), unitary_group.rvs(2, random_state=2)
    c = Circuit(2, (u2(0, 1, np.kron(a, b)),))
    simple = simplify(c)
    assert [g.kind for g in simple.gates] == [GateKind.U1, GateKind.U1]
    assert _equal_up_to_phase(simple.unitary(), c.unitary())


def test_simplify_keeps_entangling_blocks(rng):
    c = _mixed_circuit(rng)
    simple = simplify(c)
    assert len(simple.two_qubit_gates()) == 3
    assert _equal_up_to_phase(simple.unitary(), c.unitary())


def test_route_wraps_long_range_gates_in_swaps():
    c = Circuit(4, (cnot(0, 3),))
    routed = route_nearest_neighbour(c)
    assert [g.kind for g in routed.gates] == [GateKind.SWAP] * 2 + [GateKind.CNOT] + [GateKind.SWAP] * 2
    assert all(abs(g.qubits[0] - g.qubits[1]) == 1 for g in routed.gates)
    assert np.allclose(routed.unitary(), c.unitary())


def test_route_leaves_nearest_neighbour_circuits_alone(rng):
    c = _mixed_circuit(rng)
    assert route_nearest_neighbour(c) == c
