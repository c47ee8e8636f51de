import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from appCircuit.circuit import Circuit
from appCircuit.gates import cnot
from appCircuit.gates import rotation
from appCircuit.serialization import read_circuit
from appCircuit.serialization import write_circuit
from appExperiments.reporting import read_csv
from appExperiments.targets import random_brickwork_target
from appTensor.mps import random_mps
from appTensor.serialization import write_mps


def _call(*args) -> str:
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO())
    return out.getvalue()


def test_random_mps_benchmark_writes_tables(tmp_path):
    prefix = tmp_path / "bench" / "run"
    _call(
        "random_mps_benchmark",
        "--instances", "2",
        "--length", "4",
        "--method", "schon",
        "--method", "ran",
        "--seed", "5",
        "--out", str(prefix),
    )  # fmt: skip
    frame, config = read_csv(f"{prefix}.csv")
    assert len(frame) == 4
    assert config["seed"] == 5
    assert config["methods"] == ["schon", "ran"]
    summary, _ = read_csv(f"{prefix}_summary.csv")
    assert list(summary["method"]) == ["schon", "ran"]
    data = json.loads((tmp_path / "bench" / "run.json").read_text())
    assert len(data["instances"]) == 4
    assert data["config"]["command"] == "random_mps_benchmark"


def test_unknown_method_is_a_usage_error(tmp_path):
    with pytest.raises(CommandError):
        _call("random_mps_benchmark", "--method", "qsd", "--out", str(tmp_path / "x"))


def test_xxz_groundstate_command(tmp_path):
    prefix = tmp_path / "gs"
    _call(
        "xxz_groundstate",
        "--length", "6",
        "--jz", "1.0",
        "--method", "schon",
        "--method", "ran",
        "--ran-layers", "2",
        "--cutoff", "1e-10",
        "--out", str(prefix),
    )  # fmt: skip
    frame, config = read_csv(f"{prefix}.csv")
    assert set(frame["method"]) == {"schon", "ran"}
    assert "oracle_fidelity" in frame.columns
    assert config["hamiltonian"] == {"length": 6, "jz": 1.0, "hz": 0.0}
    data = json.loads((tmp_path / "gs.json").read_text())
    assert data["dmrg"]["converged"]


def test_init_scaling_command(tmp_path):
    prefix = tmp_path / "init"
    _call("init_scaling", "--lengths", "4", "6", "8", "--out", str(prefix), "--cutoff", "1e-10")
    points, _ = read_csv(f"{prefix}.csv")
    fits, _ = read_csv(f"{prefix}_fits.csv")
    assert len(points) == 9
    assert list(fits["strategy"]) == ["chi1", "random", "identity"]
    assert (tmp_path / "init.svg").read_text().lstrip().startswith("<?xml")


def test_quench_command(tmp_path):
    prefix = tmp_path / "quench"
    _call(
        "quench",
        "--length", "6",
        "--steps", "2",
        "--dt", "0.5",
        "--method", "neel",
        "--tebd-dt", "0.05",
        "--out", str(prefix),
    )  # fmt: skip
    table, config = read_csv(f"{prefix}.csv")
    assert list(table["step"]) == [0, 1, 2]
    assert config["quench_spec"]["quench"]["jz"] == 1.2
    reference, _ = read_csv(f"{prefix}_reference.csv")
    assert reference["t"].iloc[-1] == pytest.approx(1.0)
    assert (tmp_path / "quench.svg").exists()


def test_compile_mps_command(tmp_path, rng):
    target = write_mps(random_brickwork_target(5, rng), tmp_path / "target.json")
    prefix = tmp_path / "out" / "c"
    _call(
        "compile_mps",
        str(target),
        "--method", "schon",
        "--qasm",
        "--format", "json",
        "--format", "csv",
        "--out", str(prefix),
    )  # fmt: skip
    circuit = read_circuit(tmp_path / "out" / "c.circuit.json")
    assert circuit.n_qubits == 5
    assert (tmp_path / "out" / "c.qasm").read_text().startswith("OPENQASM 2.0;")
    data = json.loads((tmp_path / "out" / "c.json").read_text())
    assert data["method"] == "schon"
    assert "circuit" not in data
    assert data["config"]["length"] == 5


def test_non_convergence_exits_with_code_two(tmp_path, rng):
    target = write_mps(random_mps(5, 4, rng), tmp_path / "target.json")
    with pytest.raises(CommandError) as excinfo:
        _call(
            "compile_mps",
            str(target),
            "--method", "adapt",
            "--max-blocks", "1",
            "--epsilon", "1e-6",
            "--threshold", "0",
            "--out", str(tmp_path / "c"),
        )  # fmt: skip
    assert excinfo.value.returncode == 2
    assert (tmp_path / "c.circuit.json").exists()


def test_circuit_info(tmp_path):
    path = write_circuit(Circuit(4, (rotation("x", 0, 0.1), cnot(0, 3))), tmp_path / "c.json")
    out = _call("circuit_info", str(path), "--route", "--format", "json", "--out", str(tmp_path / "info"))
    assert "cnot_count: 13" in out
    data = json.loads((tmp_path / "info.json").read_text())
    assert data["gate_kinds"] == {"CNOT": 1, "RX": 1, "SWAP": 4}


def test_malformed_circuit_is_a_command_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "gates": [{"kind": "CNOT", "q": [0, 5]}]}))
    with pytest.raises(CommandError) as excinfo:
        _call("circuit_info", str(path))
    assert excinfo.value.returncode == 1
