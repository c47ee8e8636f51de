from appExperiments.command import ExperimentCommand
from appExperiments.reporting import frame_records
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json
from appExperiments.runners import METHODS
from appExperiments.runners import aggregate
from appExperiments.runners import run_random_benchmark
from appExperiments.runners import validate_methods

VARIATIONAL = {"adapt", "aqc-tensor"}


class Command(ExperimentCommand):
    help = "Compile random chi=2 MPS targets with every requested method and tabulate fidelity, CNOT depth and count."
    run_name = "random_mps_benchmark"

    def add_experiment_arguments(self, parser):
        parser.add_argument("--instances", type=int, default=100)
        parser.add_argument("--length", type=int, default=50)
        parser.add_argument("--chi", type=int, default=2)
        parser.add_argument("--method", action="append", dest="methods", choices=METHODS)

    def run(self, options: dict) -> bool:
        methods = validate_methods(options["methods"] or ())
        opts = self.method_options(options)
        config = self.resolved_config(options, methods=list(methods), method_options=opts.to_dict())
        frame = run_random_benchmark(
            options["instances"],
            options["length"],
            options["chi"],
            methods,
            opts,
            seed=options["seed"],
            jobs=options["jobs"],
        )
        summary = aggregate(frame)
        formats = self.formats(options)
        if "csv" in formats:
            write_csv(frame, self.output(options, ".csv"), config)
            write_csv(summary, self.output(options, "_summary.csv"), config)
        if "json" in formats:
            data = {"instances": frame_records(frame), "aggregate": frame_records(summary)}
            write_json(data, self.output(options, ".json"), config)
        if "svg" in formats:
            self.stderr.write("random_mps_benchmark has no plot; skipping svg.")
        self.stdout.write(summary.to_string(index=False))
        variational = frame[frame["method"].isin(VARIATIONAL)]
        return bool(variational["converged"].all())
