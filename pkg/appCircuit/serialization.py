"""Circuit JSON: {"n": N, "gates": [{"kind", "q", "params", "matrix"?, "from_zero"?}, ...]}."""

import json
from pathlib import Path

import numpy as np

from appCore.exceptions import GateValidationError
from appCircuit.circuit import Circuit
from appCircuit.gates import Gate


def gate_to_dict(g: Gate) -> dict:
    entry = {"kind": str(g.kind), "q": list(g.qubits), "params": list(g.params)}
    if g.matrix is not None:
        entry["matrix"] = {
            "re": g.matrix.real.tolist(),
            "im": g.matrix.imag.tolist(),
        }
    if g.from_zero:
        entry["from_zero"] = True
    return entry


def gate_from_dict(entry: dict) -> Gate:
    try:
        matrix = None
        if entry.get("matrix") is not None:
            m = entry["matrix"]
            matrix = np.asarray(m["re"], dtype=float) + 1j * np.asarray(m["im"], dtype=float)
        return Gate(
            entry["kind"],
            tuple(entry["q"]),
            tuple(entry.get("params", ())),
            matrix,
            bool(entry.get("from_zero", False)),
        )
    except (KeyError, TypeError) as e:
        msg = f"Malformed gate entry {entry!r}: {e}"
        raise GateValidationError(msg) from e


def circuit_to_dict(c: Circuit) -> dict:
    return {"n": c.n_qubits, "gates": [gate_to_dict(g) for g in c.gates]}


def circuit_from_dict(data: dict) -> Circuit:
    try:
        n = int(data["n"])
        gates = data["gates"]
    except (KeyError, TypeError, ValueError) as e:
        msg = f"Malformed circuit document: {e}"
        raise GateValidationError(msg) from e
    return Circuit(n, tuple(gate_from_dict(entry) for entry in gates))


def write_circuit(c: Circuit, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(circuit_to_dict(c)))
    return path


def read_circuit(path) -> Circuit:
    return circuit_from_dict(json.loads(Path(path).read_text()))
