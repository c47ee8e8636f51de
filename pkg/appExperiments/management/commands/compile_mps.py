from pathlib import Path

import numpy as np
import pandas as pd

from appAdapt.compiler import compile as adapt_compile
from appAdapt.config import COUPLINGS
from appAdapt.config import AdaptConfig
from appAqcTensor.compiler import compile as tensor_compile
from appAqcTensor.compiler import compile_with_layer_sweep
from appAqcTensor.config import INITIALIZATIONS
from appAqcTensor.config import OPTIMIZERS
from appAqcTensor.config import TensorConfig
from appCircuit.qasm import to_qasm
from appCircuit.serialization import write_circuit
from appExperiments.command import ExperimentCommand
from appExperiments.reporting import plot_lines
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json
from appExperiments.runners import METHODS
from appExperiments.runners import compile_with_method
from appTensor.serialization import read_mps


class Command(ExperimentCommand):
    help = "Compile an MPS file into a preparation circuit with any method."
    run_name = "compile_mps"
    default_formats = ("json",)

    def add_experiment_arguments(self, parser):
        parser.add_argument("target", help="MPS JSON file.")
        parser.add_argument("--method", default="adapt", choices=METHODS)
        parser.add_argument("--coupling", default="nearest-neighbour", choices=COUPLINGS)
        parser.add_argument("--start", default="chi1", choices=("chi1", "none"))
        parser.add_argument("--rotosolve-window", type=int, default=None)
        parser.add_argument("--max-blocks", type=int, default=None)
        parser.add_argument("--optimizer", default="lbfgs", choices=OPTIMIZERS)
        parser.add_argument("--initialization", default="chi1", choices=INITIALIZATIONS)
        parser.add_argument("--layer-sweep", action="store_true", help="Grow AQC-Tensor layers up to --layers.")
        parser.add_argument("--qasm", action="store_true", help="Also write an OpenQASM 2 file.")

    def _compile(self, target, options: dict):
        method = options["method"]
        if method == "adapt":
            cfg = AdaptConfig(
                epsilon=options["epsilon"],
                coupling=options["coupling"],
                starting_circuit=options["start"],
                sim_threshold=options["threshold"],
                max_blocks=options["max_blocks"],
                rotosolve_window=options["rotosolve_window"],
            )
            return adapt_compile(target, cfg)
        if method == "aqc-tensor":
            cfg = TensorConfig(
                epsilon=options["epsilon"],
                sim_threshold=options["threshold"],
                optimizer=options["optimizer"],
                initialization=options["initialization"],
                seed=options["seed"],
            )
            if options["layer_sweep"]:
                result, rows = compile_with_layer_sweep(target, options["layers"], cfg)
                result.extra["layer_sweep"] = rows
                return result
            return tensor_compile(target, options["layers"], cfg)
        return compile_with_method(target, method, self.method_options(options))

    def run(self, options: dict) -> bool:
        target = read_mps(options["target"])
        config = self.resolved_config(options, length=target.length)
        result = self._compile(target, options)

        circuit_path = self.output(options, ".circuit.json")
        circuit_path.parent.mkdir(parents=True, exist_ok=True)
        write_circuit(result.circuit, circuit_path)
        if options["qasm"]:
            Path(self.output(options, ".qasm")).write_text(to_qasm(result.circuit), encoding="utf-8")
        formats = self.formats(options)
        trace = pd.DataFrame(result.cost_trace, columns=["iteration", "cost"])
        if "json" in formats:
            write_json(result.to_dict(include_circuit=False), self.output(options, ".json"), config)
        if "csv" in formats:
            write_csv(trace, self.output(options, "_trace.csv"), config)
        if "svg" in formats and len(trace):
            series = {result.method: (trace["iteration"].to_numpy(), np.maximum(trace["cost"].to_numpy(), 1e-16))}
            plot_lines(series, self.output(options, ".svg"), xlabel="iteration", ylabel="cost", logy=True)
        self.stdout.write(str(result.summary()))
        return result.converged
