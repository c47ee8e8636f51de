from collections import Counter
from pathlib import Path

import pandas as pd

from appCircuit.circuit import route_nearest_neighbour
from appCircuit.circuit import simplify
from appCircuit.metrics import cnot_metrics
from appCircuit.qasm import to_qasm
from appCircuit.serialization import read_circuit
from appCircuit.serialization import write_circuit
from appExperiments.command import ExperimentCommand
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json


class Command(ExperimentCommand):
    help = "CNOT depth and count of a circuit file, with optional simplification, routing and QASM export."
    run_name = "circuit_info"
    default_formats = ()

    def add_experiment_arguments(self, parser):
        parser.add_argument("circuit", help="Circuit JSON file.")
        parser.add_argument("--simplify", action="store_true", help="Consolidate pair runs and drop identity blocks.")
        parser.add_argument("--route", action="store_true", help="Insert SWAP chains for non-adjacent gates.")
        parser.add_argument("--qasm", default=None, help="Write OpenQASM 2 to this path.")

    def run(self, options: dict) -> bool:
        c = read_circuit(options["circuit"])
        if options["simplify"]:
            c = simplify(c)
            path = self.output(options, ".circuit.json")
            path.parent.mkdir(parents=True, exist_ok=True)
            write_circuit(c, path)
        if options["route"]:
            c = route_nearest_neighbour(c)
        kinds = Counter(str(g.kind) for g in c.gates)
        info = {
            "n_qubits": c.n_qubits,
            "gates": len(c),
            **cnot_metrics(c).to_dict(),
            "gate_kinds": dict(sorted(kinds.items())),
        }
        if options["qasm"]:
            Path(options["qasm"]).write_text(to_qasm(c), encoding="utf-8")
        config = self.resolved_config(options)
        formats = self.formats(options)
        if "json" in formats:
            write_json(info, self.output(options, ".json"), config)
        if "csv" in formats:
            row = {k: v for k, v in info.items() if k != "gate_kinds"}
            write_csv(pd.DataFrame([row]), self.output(options, ".csv"), config)
        for key, value in info.items():
            self.stdout.write(f"{key}: {value}")
        return True
