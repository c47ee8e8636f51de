import math
from dataclasses import dataclass

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        __format__ = str.__format__

import numpy as np

from appCore.exceptions import GateValidationError
from appCore.utils.validation import require_unitary
from appCircuit.su4 import N_PARAMS
from appCircuit.su4 import rx
from appCircuit.su4 import ry
from appCircuit.su4 import rz
from appCircuit.su4 import su4_from_params
from appCircuit.su4 import su4_inverse_params

CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)
SWAP_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


class GateKind(StrEnum):
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CNOT = "CNOT"
    CZ = "CZ"
    SWAP = "SWAP"
    U1 = "U1"
    U2 = "U2"
    UN = "UN"
    SU4 = "SU4"


ROTATIONS = {GateKind.RX: rx, GateKind.RY: ry, GateKind.RZ: rz}
FIXED = {GateKind.CNOT: CNOT_MATRIX, GateKind.CZ: CZ_MATRIX, GateKind.SWAP: SWAP_MATRIX}
_ARITY = {
    GateKind.RX: 1,
    GateKind.RY: 1,
    GateKind.RZ: 1,
    GateKind.U1: 1,
    GateKind.CNOT: 2,
    GateKind.CZ: 2,
    GateKind.SWAP: 2,
    GateKind.U2: 2,
    GateKind.SU4: 2,
}
_N_PARAMS = {GateKind.RX: 1, GateKind.RY: 1, GateKind.RZ: 1, GateKind.SU4: N_PARAMS}
_PAYLOAD = {GateKind.U1, GateKind.U2, GateKind.UN}


@dataclass(frozen=True, eq=False)
class Gate:
    """
    One circuit instruction.

    Matrices are big-endian in the order of ``qubits``: the first listed qubit
    is the most significant bit, so CNOT has control ``qubits[0]``.
    ``from_zero`` marks a two-qubit gate whose second input is known to be |0>.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = None
    from_zero: bool = False

    def __post_init__(self):
        try:
            kind = GateKind(self.kind)
        except ValueError as e:
            msg = f"Unknown gate kind '{self.kind}'."
            raise GateValidationError(msg) from e
        qubits = tuple(int(q) for q in self.qubits)
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "params", params)

        if len(set(qubits)) != len(qubits) or any(q < 0 for q in qubits):
            msg = f"{kind} qubits {qubits} must be distinct and non-negative."
            raise GateValidationError(msg)
        arity = _ARITY.get(kind)
        if arity is not None and len(qubits) != arity:
            msg = f"{kind} acts on {arity} qubit(s), got {qubits}."
            raise GateValidationError(msg)
        if kind == GateKind.UN and len(qubits) < 1:
            msg = "UN needs at least one qubit."
            raise GateValidationError(msg)
        if len(params) != _N_PARAMS.get(kind, 0):
            msg = f"{kind} takes {_N_PARAMS.get(kind, 0)} parameter(s), got {len(params)}."
            raise GateValidationError(msg)
        if not all(math.isfinite(p) for p in params):
            msg = f"{kind} parameters must be finite, got {params}."
            raise GateValidationError(msg)
        if kind in _PAYLOAD:
            if self.matrix is None:
                msg = f"{kind} needs a matrix payload."
                raise GateValidationError(msg)
            object.__setattr__(self, "matrix", require_unitary(self.matrix, 2 ** len(qubits)))
        elif self.matrix is not None:
            msg = f"{kind} does not take a matrix payload."
            raise GateValidationError(msg)

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def unitary(self) -> np.ndarray:
        if self.kind in ROTATIONS:
            return ROTATIONS[self.kind](self.params[0])
        if self.kind in FIXED:
            return FIXED[self.kind]
        if self.kind == GateKind.SU4:
            return su4_from_params(self.params)
        return self.matrix

    def inverse(self) -> "Gate":
        if self.kind in ROTATIONS:
            return Gate(self.kind, self.qubits, (-self.params[0],))
        if self.kind in FIXED:
            return self
        if self.kind == GateKind.SU4:
            return Gate(self.kind, self.qubits, tuple(su4_inverse_params(self.params)))
        return Gate(self.kind, self.qubits, matrix=self.matrix.conj().T)

    def with_params(self, params) -> "Gate":
        return Gate(self.kind, self.qubits, tuple(params), self.matrix, self.from_zero)

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.kind, self.qubits, self.params, self.from_zero) != (
            other.kind,
            other.qubits,
            other.params,
            other.from_zero,
        ):
            return False
        if self.matrix is None or other.matrix is None:
            return self.matrix is None and other.matrix is None
        return bool(np.array_equal(self.matrix, other.matrix))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        extra = f", params={list(np.round(self.params, 6))}" if self.params else ""
        return f"Gate({self.kind}, {list(self.qubits)}{extra})"


# ======================== Constructors =========================
def rotation(axis: str, qubit: int, theta: float) -> Gate:
    return Gate(GateKind(f"R{axis.upper()}"), (qubit,), (theta,))


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def cz(a: int, b: int) -> Gate:
    return Gate(GateKind.CZ, (a, b))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


def u1(qubit: int, matrix) -> Gate:
    return Gate(GateKind.U1, (qubit,), matrix=matrix)


def u2(q0: int, q1: int, matrix, *, from_zero: bool = False) -> Gate:
    return Gate(GateKind.U2, (q0, q1), matrix=matrix, from_zero=from_zero)


def un(qubits, matrix) -> Gate:
    return Gate(GateKind.UN, tuple(qubits), matrix=matrix)


def su4(q0: int, q1: int, params=None) -> Gate:
    params = np.zeros(N_PARAMS) if params is None else params
    return Gate(GateKind.SU4, (q0, q1), tuple(params))
