"""Approximate preparation by iterated chi=2 disentangling staircases."""

import logging

import numpy as np

from appCircuit.circuit import Circuit
from appCircuit.gates import u2
from appCircuit.metrics import cnot_metrics
from appCore.exceptions import ConfigurationError
from appSequential.schon import staircase_gates
from appSimulator.simulator import run_gates
from appTensor.compression import svd_compress
from appTensor.mps import MPSState
from appTensor.mps import fidelity
from appTensor.mps import normalize
from appTensor.mps import zero_state
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)

RESIDUAL_POLICY = TruncationPolicy(threshold=1e-12)


def _as_intermediate(gates):
    """Staircase gates that no longer act on a fresh |0> ancilla."""
    return [u2(*g.qubits, g.matrix) if g.from_zero else g for g in gates]


def _ran_layers(target: MPSState, layers: int, policy: TruncationPolicy):
    """Yield (staircase gates, fidelity after this many layers) for each layer."""
    if layers < 1:
        msg = f"Ran preparation needs at least one layer, got {layers}."
        raise ConfigurationError(msg)
    residual = normalize(target)
    zero = zero_state(target.length)
    for layer in range(1, layers + 1):
        approx = svd_compress(residual, 2)
        gates = staircase_gates(approx, m=1)
        residual = normalize(run_gates(residual, [g.inverse() for g in reversed(gates)], policy))
        f = fidelity(zero, residual)
        logger.info("Ran layer %d: fidelity %.6f", layer, f)
        yield gates, f


def _assemble(n_qubits: int, stack: list) -> Circuit:
    """Circuit G_L ... G_1: the last staircase runs first on |0...0>."""
    gates = list(stack[-1])
    for layer_gates in reversed(stack[:-1]):
        gates.extend(_as_intermediate(layer_gates))
    return Circuit(n_qubits, tuple(gates))


def ran_prepare(
    target: MPSState,
    layers: int,
    policy: TruncationPolicy = RESIDUAL_POLICY,
) -> tuple[Circuit, float]:
    """
    Disentangle ``target`` layer by layer: compress the residual to chi=2,
    build its exact staircase G and set residual <- G^dagger residual.

    Returns the preparation circuit and |<0|residual>|^2, which equals the
    fidelity of the circuit output with the target.
    """
    stack = []
    f = 0.0
    for gates, f in _ran_layers(target, layers, policy):  # noqa: B007
        stack.append(gates)
    return _assemble(target.length, stack), f


def ran_layer_sweep(
    target: MPSState,
    max_layers: int,
    policy: TruncationPolicy = RESIDUAL_POLICY,
) -> list[dict]:
    """Fidelity and CNOT metrics for every layer count 1..max_layers from one run."""
    rows = []
    stack = []
    for gates, f in _ran_layers(target, max_layers, policy):
        stack.append(gates)
        metrics = cnot_metrics(_assemble(target.length, stack))
        rows.append({"layers": len(stack), "fidelity": float(np.clip(f, 0.0, 1.0)), **metrics.to_dict()})
    return rows
