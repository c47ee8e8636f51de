"""
Fidelity cost C = 1 - |<target|V(theta)|0>|^2 and its analytic gradient.

For block b with neighbours fixed, f = <chi_b| G_b |phi_b> where phi_b is the
circuit state before b and chi_b the target pulled back through every later
block. The two-site environment E of that overlap gives f = sum E * G_b and
df/dtheta = sum E * dG_b/dtheta.
"""

import logging

import numpy as np

from appAqcTensor.ansatz import BrickworkAnsatz
from appCircuit.su4 import su4_derivatives
from appCircuit.su4 import su4_from_params
from appSimulator.simulator import run_gates
from appTensor.mps import MPSState
from appTensor.mps import inner_product
from appTensor.mps import normalize
from appTensor.mps import zero_state
from appTensor.observables import two_site_environment
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


def initial_state(ansatz: BrickworkAnsatz) -> MPSState:
    return run_gates(zero_state(ansatz.n_qubits), ansatz.initial_gates(), TruncationPolicy())


def cost(ansatz: BrickworkAnsatz, params, target: MPSState, policy: TruncationPolicy) -> float:
    state = normalize(run_gates(initial_state(ansatz), ansatz.block_gates(params), policy))
    return float(1.0 - abs(inner_product(normalize(target), state)) ** 2)


def cost_and_gradient(
    ansatz: BrickworkAnsatz,
    params,
    target: MPSState,
    policy: TruncationPolicy,
) -> tuple[float, np.ndarray]:
    blocks = ansatz.split(params)
    gates = ansatz.block_gates(params)
    target = normalize(target)
    n_blocks = len(gates)
    if n_blocks == 0:
        return cost(ansatz, params, target, policy), np.zeros(0)

    # chis[b] = G_{b+1}^dagger ... G_N^dagger |target>
    chis = [None] * n_blocks
    bra = target
    for b in range(n_blocks - 1, -1, -1):
        chis[b] = bra
        bra = normalize(run_gates(bra, [gates[b].inverse()], policy))

    grad = np.empty_like(blocks)
    phi = initial_state(ansatz)
    f = 0.0
    for b, (pair, theta) in enumerate(zip(ansatz.blocks, blocks, strict=True)):
        env = two_site_environment(chis[b], phi, *pair)
        f = np.sum(env * su4_from_params(theta))
        df = np.einsum("on,kon->k", env, su4_derivatives(theta))
        grad[b] = -2.0 * (np.conj(f) * df).real
        phi = normalize(run_gates(phi, [gates[b]], policy))
    return float(1.0 - abs(f) ** 2), grad.reshape(-1)
