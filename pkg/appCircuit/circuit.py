import logging
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

import numpy as np

from appCore.exceptions import GateValidationError
from appCircuit.gates import Gate
from appCircuit.gates import GateKind
from appCircuit.gates import swap
from appCircuit.gates import u1
from appCircuit.gates import u2
from appCircuit.kak import ZERO_TOL
from appCircuit.kak import kak_decompose

logger = logging.getLogger(__name__)

UNITARY_MAX_QUBITS = 10


@dataclass(frozen=True, eq=False)
class Circuit:
    """
    Ordered gate list on ``n_qubits`` wires.

    ``initial_state`` is None for |0...0>, or an MPS the gates act on (a
    cached target or prefix).
    """

    n_qubits: int
    gates: tuple = ()
    initial_state: object = field(default=None, repr=False)

    def __post_init__(self):
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        if self.n_qubits < 1:
            msg = f"A circuit needs at least one qubit, got {self.n_qubits}."
            raise GateValidationError(msg)
        for g in gates:
            if not isinstance(g, Gate):
                msg = f"Circuit entries must be Gate instances, got {type(g).__name__}."
                raise GateValidationError(msg)
            if max(g.qubits) >= self.n_qubits:
                msg = f"{g!r} does not fit on {self.n_qubits} qubits."
                raise GateValidationError(msg)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self.gates == other.gates

    __hash__ = None  # type: ignore[assignment]

    def append(self, *gates: Gate) -> "Circuit":
        return replace(self, gates=self.gates + gates)

    def extend(self, gates) -> "Circuit":
        return replace(self, gates=self.gates + tuple(gates))

    def compose(self, other: "Circuit") -> "Circuit":
        """This circuit followed by ``other``."""
        if other.n_qubits != self.n_qubits:
            msg = f"Cannot compose circuits on {self.n_qubits} and {other.n_qubits} qubits."
            raise GateValidationError(msg)
        return self.extend(other.gates)

    def unitary(self) -> np.ndarray:
        """Dense matrix of the gate sequence (little-endian), for small circuits."""
        from appOracle.dense import circuit_unitary  # noqa: PLC0415

        return circuit_unitary(self)

    def two_qubit_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.n_qubits == 2]  # noqa: PLR2004


def inverse(c: Circuit) -> Circuit:
    """Reversed circuit of inverted gates; inverse(inverse(c)) == c."""
    return Circuit(c.n_qubits, tuple(g.inverse() for g in reversed(c.gates)))


# ======================== Rewriting =========================
def _embed(gate: Gate, pair: tuple[int, int]) -> np.ndarray:
    """Gate matrix as a 4x4 operator in the big-endian order of ``pair``."""
    m = gate.unitary()
    if gate.n_qubits == 1:
        eye = np.eye(2, dtype=complex)
        return np.kron(m, eye) if gate.qubits[0] == pair[0] else np.kron(eye, m)
    if gate.qubits == pair:
        return m
    return m.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


def consolidate(c: Circuit) -> Circuit:
    """Merge maximal runs of gates confined to one qubit pair into single U2 gates."""
    out: list[Gate] = []
    open_blocks: dict[tuple[int, int], list] = {}
    owner: dict[int, tuple[int, int]] = {}

    def close(pair):
        matrix, count, first = open_blocks.pop(pair)
        for q in pair:
            owner.pop(q, None)
        out.append(first if count == 1 else u2(pair[0], pair[1], matrix))

    for g in c.gates:
        if g.n_qubits == 1 and g.qubits[0] in owner:
            pair = owner[g.qubits[0]]
            block = open_blocks[pair]
            block[0] = _embed(g, pair) @ block[0]
            block[1] += 1
            continue
        if g.n_qubits == 1:
            out.append(g)
            continue
        if g.n_qubits == 2:  # noqa: PLR2004
            pair = tuple(sorted(g.qubits))
            if pair in open_blocks:
                block = open_blocks[pair]
                block[0] = _embed(g, pair) @ block[0]
                block[1] += 1
                continue
            for q in pair:
                if q in owner:
                    close(owner[q])
            open_blocks[pair] = [_embed(g, pair), 1, g]
            for q in pair:
                owner[q] = pair
            continue
        for q in g.qubits:
            if q in owner:
                close(owner[q])
        out.append(g)
    for pair in list(open_blocks):
        close(pair)
    return Circuit(c.n_qubits, tuple(out), c.initial_state)


def simplify(c: Circuit, tol: float = ZERO_TOL) -> Circuit:
    """Consolidate, then replace two-qubit blocks with zero interaction by their local factors."""
    out = []
    for g in consolidate(c).gates:
        if g.n_qubits == 2 and g.kind in (GateKind.U2, GateKind.SU4):  # noqa: PLR2004
            decomp = kak_decompose(g.unitary(), tol=tol)
            if decomp.cnot_cost == 0:
                # The interaction is the identity; the global phase is dropped.
                a0, a1 = decomp.post
                b0, b1 = decomp.pre
                out.append(u1(g.qubits[0], a0 @ b0))
                out.append(u1(g.qubits[1], a1 @ b1))
                continue
        out.append(g)
    return Circuit(c.n_qubits, tuple(out), c.initial_state)


def route_nearest_neighbour(c: Circuit) -> Circuit:
    """Insert SWAP chains around two-qubit gates on non-adjacent wires."""
    out: list[Gate] = []
    routed = 0
    for g in c.gates:
        if g.n_qubits != 2 or abs(g.qubits[0] - g.qubits[1]) == 1:  # noqa: PLR2004
            out.append(g)
            continue
        lo, hi = sorted(g.qubits)
        chain = [swap(k, k + 1) for k in range(lo, hi - 1)]
        moved = tuple(hi - 1 if q == lo else q for q in g.qubits)
        out.extend(chain)
        out.append(
            Gate(g.kind, moved, g.params, g.matrix, g.from_zero),
        )
        out.extend(reversed(chain))
        routed += 1
    if routed:
        logger.debug("Routed %d long-range gates with SWAP chains", routed)
    return Circuit(c.n_qubits, tuple(out), c.initial_state)
