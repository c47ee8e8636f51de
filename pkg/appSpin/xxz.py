"""XXZ Hamiltonian as an MPO and its second-order Trotter circuit."""

import numpy as np

from appCircuit.circuit import Circuit
from appCircuit.gates import Gate
from appCircuit.gates import rotation
from appCircuit.gates import su4
from appCircuit.su4 import N_PARAMS
from appCircuit.su4 import interaction
from appSpin.params import XXZParams
from appTensor.mpo import MPOOperator

SZ = np.diag([0.5, -0.5]).astype(complex)
SP = np.array([[0, 1], [0, 0]], dtype=complex)
SM = SP.T.copy()
I2 = np.eye(2, dtype=complex)
MPO_BOND = 5


def xxz_mpo(p: XXZParams) -> MPOOperator:
    """
    Bond-dimension-5 lower-triangular MPO.

    The left boundary selects row 4 and the right boundary column 0.
    """
    w = np.zeros((MPO_BOND, 2, 2, MPO_BOND), dtype=complex)
    w[0, :, :, 0] = I2
    w[1, :, :, 0] = SM
    w[2, :, :, 0] = SP
    w[3, :, :, 0] = SZ
    w[4, :, :, 0] = -p.hz * SZ
    w[4, :, :, 1] = 0.5 * SP
    w[4, :, :, 2] = 0.5 * SM
    w[4, :, :, 3] = p.jz * SZ
    w[4, :, :, 4] = I2
    tensors = [w.copy() for _ in range(p.length)]
    tensors[0] = tensors[0][4:5]
    tensors[-1] = tensors[-1][..., 0:1]
    return MPOOperator(tuple(tensors))


def bond_interaction_params(jz: float, tau: float) -> np.ndarray:
    """(cx, cy, cz) with exp(-i tau (SxSx + SySy + jz SzSz)) = exp(i(cx XX + cy YY + cz ZZ))."""
    return np.array([-tau / 4, -tau / 4, -jz * tau / 4])


def bond_gate_matrix(jz: float, tau: float) -> np.ndarray:
    return interaction(*bond_interaction_params(jz, tau))


def _bond_gate(k: int, jz: float, tau: float) -> Gate:
    params = np.zeros(N_PARAMS)
    params[6:9] = bond_interaction_params(jz, tau)
    return su4(k, k + 1, params)


def _bond_layer(p: XXZParams, start: int, tau: float) -> list[Gate]:
    bonds = range(start, p.length - 1, 2)
    # Odd-bond layers run right to left so the simulator's center walks back.
    ordered = bonds if start == 0 else reversed(bonds)
    return [_bond_gate(k, p.jz, tau) for k in ordered]


def _field_layer(p: XXZParams, tau: float) -> list[Gate]:
    if p.hz == 0.0:
        return []
    # exp(i hz tau Sz) = RZ(-hz tau)
    return [rotation("z", k, -p.hz * tau) for k in range(p.length)]


def trotter2_circuit(p: XXZParams, dt: float, n_steps: int) -> Circuit:
    """
    Symmetric splitting per step: even/2, field/2, odd, field/2, even/2.

    Even bonds are (0,1), (2,3), ...; the half steps of consecutive Trotter
    steps are merged into one full even-bond layer.
    """
    gates: list[Gate] = []
    if n_steps <= 0:
        return Circuit(p.length)
    gates += _bond_layer(p, 0, dt / 2)
    for step in range(n_steps):
        gates += _field_layer(p, dt / 2)
        gates += _bond_layer(p, 1, dt)
        gates += _field_layer(p, dt / 2)
        last = step == n_steps - 1
        gates += _bond_layer(p, 0, dt / 2 if last else dt)
    return Circuit(p.length, tuple(gates))
