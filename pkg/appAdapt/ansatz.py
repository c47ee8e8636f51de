"""
Two-qubit ansatz block of the adaptive compiler.

On the pair (i, j), i < j, the block applies

    R0(i) R1(j), CNOT(i -> j), R2(i) R3(j), CNOT(i -> j), R4(i) R5(j)

with R_k = exp(-i theta_k P_k / 2) and P_k in {X, Y, Z}. At zero angles
the two CNOTs cancel, so a new block never changes the cost.
"""

from dataclasses import dataclass
from dataclasses import replace

import numpy as np

from appAdapt.config import AXES
from appCore.exceptions import ConfigurationError
from appCore.exceptions import SiteIndexError
from appCircuit.gates import CNOT_MATRIX
from appCircuit.gates import Gate
from appCircuit.gates import cnot
from appCircuit.gates import rotation
from appCircuit.su4 import I2
from appCircuit.su4 import X
from appCircuit.su4 import Y
from appCircuit.su4 import Z
from appCircuit.su4 import rx
from appCircuit.su4 import ry
from appCircuit.su4 import rz

N_ANGLES = 6
PAULIS = {"X": X, "Y": Y, "Z": Z}
ROTATIONS = {"X": rx, "Y": ry, "Z": rz}
# Position of each angle in the step sequence (CNOTs sit at 2 and 5).
SLOTS = (0, 1, 3, 4, 6, 7)


def _on_wire(k: int, m: np.ndarray) -> np.ndarray:
    """Embed a one-qubit matrix on the first (k even) or second wire of the pair."""
    return np.kron(m, I2) if k % 2 == 0 else np.kron(I2, m)


@dataclass(frozen=True)
class AnsatzBlock:
    pair: tuple[int, int]
    axes: tuple[str, ...] = ("Y",) * N_ANGLES
    angles: tuple[float, ...] = (0.0,) * N_ANGLES

    def __post_init__(self):
        i, j = (int(q) for q in self.pair)
        if i == j or min(i, j) < 0:
            msg = f"Block pair {self.pair} must be two distinct non-negative qubits."
            raise SiteIndexError(msg)
        axes = tuple(a.upper() for a in self.axes)
        if len(axes) != N_ANGLES or any(a not in AXES for a in axes):
            msg = f"Block axes must be {N_ANGLES} labels from {AXES}, got {self.axes}."
            raise ConfigurationError(msg)
        angles = tuple(float(t) for t in self.angles)
        if len(angles) != N_ANGLES:
            msg = f"Block takes {N_ANGLES} angles, got {len(angles)}."
            raise ConfigurationError(msg)
        object.__setattr__(self, "pair", (min(i, j), max(i, j)))
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "angles", angles)

    def with_angle(self, k: int, angle: float, axis: str | None = None) -> "AnsatzBlock":
        angles = list(self.angles)
        angles[k] = angle
        axes = list(self.axes)
        if axis is not None:
            axes[k] = axis
        return replace(self, axes=tuple(axes), angles=tuple(angles))

    def steps(self) -> list[np.ndarray]:
        """The eight 4x4 step matrices, in application order."""
        rots = [_on_wire(k, ROTATIONS[a](t)) for k, (a, t) in enumerate(zip(self.axes, self.angles, strict=True))]
        return [rots[0], rots[1], CNOT_MATRIX, rots[2], rots[3], CNOT_MATRIX, rots[4], rots[5]]

    def matrix(self) -> np.ndarray:
        """Big-endian 4x4 unitary on ``pair``."""
        out = np.eye(4, dtype=complex)
        for step in self.steps():
            out = step @ out
        return out

    def gates(self) -> list[Gate]:
        i, j = self.pair
        wires = (i, j)
        rots = [rotation(a, wires[k % 2], t) for k, (a, t) in enumerate(zip(self.axes, self.angles, strict=True))]
        return [rots[0], rots[1], cnot(i, j), rots[2], rots[3], cnot(i, j), rots[4], rots[5]]

    def inverse_gates(self) -> list[Gate]:
        return [g.inverse() for g in reversed(self.gates())]


def operator_gradient(block: AnsatzBlock, k: int) -> np.ndarray:
    """
    A_k = (steps after k) P_k (steps up to k), so dU/dtheta_k = -i/2 A_k.

    At zero angles this is the Pauli P_k conjugated by the CNOTs before it.
    """
    if not 0 <= k < N_ANGLES:
        msg = f"Block parameter index {k} outside 0..{N_ANGLES - 1}."
        raise SiteIndexError(msg)
    steps = block.steps()
    slot = SLOTS[k]
    out = np.eye(4, dtype=complex)
    for n, step in enumerate(steps):
        out = step @ out
        if n == slot:
            out = _on_wire(k, PAULIS[block.axes[k]]) @ out
    return out
