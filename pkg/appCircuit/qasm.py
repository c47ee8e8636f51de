"""OpenQASM 2 rendering on the qelib1 gate set."""

import logging

import numpy as np

from appCircuit.circuit import Circuit
from appCircuit.gates import Gate
from appCircuit.gates import GateKind
from appCircuit.kak import kak_decompose
from appCircuit.su4 import zyz_angles

logger = logging.getLogger(__name__)

_NAMES = {
    GateKind.RX: "rx",
    GateKind.RY: "ry",
    GateKind.RZ: "rz",
    GateKind.CNOT: "cx",
    GateKind.CZ: "cz",
    GateKind.SWAP: "swap",
}


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _u3(matrix: np.ndarray, q: int) -> str:
    # RZ(a) RY(b) RZ(c) is u3(b, a, c) up to phase.
    _, a, b, c = zyz_angles(matrix)
    return f"u3({_fmt(b)},{_fmt(a)},{_fmt(c)}) q[{q}];"


def _interaction_lines(q0: int, q1: int, coefficients) -> list[str]:
    """exp(i(a XX + b YY + c ZZ)) as three commuting ZZ-type rotations conjugated into place."""
    a, b, c = coefficients
    lines = []

    def zz(angle: float) -> list[str]:
        # CX (I x RZ(-2 angle)) CX = exp(i angle ZZ)
        return [f"cx q[{q0}],q[{q1}];", f"rz({_fmt(-2 * angle)}) q[{q1}];", f"cx q[{q0}],q[{q1}];"]

    if abs(a) > 0:
        lines += [f"h q[{q0}];", f"h q[{q1}];", *zz(a), f"h q[{q0}];", f"h q[{q1}];"]
    if abs(b) > 0:
        # (S H) Z (S H)^dagger = Y
        lines += [f"sdg q[{q0}];", f"sdg q[{q1}];", f"h q[{q0}];", f"h q[{q1}];", *zz(b)]
        lines += [f"h q[{q0}];", f"h q[{q1}];", f"s q[{q0}];", f"s q[{q1}];"]
    if abs(c) > 0:
        lines += zz(c)
    return lines


def _gate_lines(g: Gate) -> list[str]:
    q = g.qubits
    if g.kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
        return [f"{_NAMES[g.kind]}({_fmt(g.params[0])}) q[{q[0]}];"]
    if g.kind in _NAMES:
        return [f"{_NAMES[g.kind]} " + ",".join(f"q[{x}]" for x in q) + ";"]
    if g.kind == GateKind.U1:
        return [_u3(g.matrix, q[0])]
    if g.n_qubits == 2:  # noqa: PLR2004
        d = kak_decompose(g.unitary())
        return [
            _u3(d.pre[0], q[0]),
            _u3(d.pre[1], q[1]),
            *_interaction_lines(q[0], q[1], d.coefficients),
            _u3(d.post[0], q[0]),
            _u3(d.post[1], q[1]),
        ]
    logger.warning("No OpenQASM 2 rendering for a %d-qubit unitary; emitted as a comment", g.n_qubits)
    return [f"// opaque {g.n_qubits}-qubit unitary on " + ",".join(f"q[{x}]" for x in q)]


def to_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        lines.extend(_gate_lines(g))
    return "\n".join(lines) + "\n"
