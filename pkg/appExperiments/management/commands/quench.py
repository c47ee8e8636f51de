from django.conf import settings

from appExperiments.command import ExperimentCommand
from appExperiments.reporting import frame_records
from appExperiments.reporting import plot_lines
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json
from appExperiments.runners import PREPARATIONS
from appExperiments.runners import run_quench
from appSpin.params import DmrgConfig
from appSpin.params import QuenchSpec
from appSpin.params import XXZParams
from appTensor.truncation import TruncationPolicy


class Command(ExperimentCommand):
    help = "Prepare the XXZ ground state, apply Trotter steps of the quench Hamiltonian and track the staggered magnetization."
    run_name = "quench"
    default_formats = ("csv", "json", "svg")
    default_layers = 3

    def add_experiment_arguments(self, parser):
        parser.add_argument("--length", type=int, default=50)
        parser.add_argument("--ground-jz", type=float, default=2.5)
        parser.add_argument("--ground-hz", type=float, default=0.0)
        parser.add_argument("--quench-jz", type=float, default=1.2)
        parser.add_argument("--quench-hz", type=float, default=0.5)
        parser.add_argument("--dt", type=float, default=1.0)
        parser.add_argument("--steps", type=int, default=5)
        parser.add_argument("--record-every", type=float, default=1.0)
        parser.add_argument("--method", default="aqc-tensor", choices=PREPARATIONS, help="Ground-state preparation.")
        parser.add_argument("--tebd-dt", type=float, default=settings.MPSC["TEBD_DT"])
        parser.add_argument("--tebd-cutoff", type=float, default=settings.MPSC["TEBD_CUTOFF"])
        parser.add_argument("--tebd-max-bond", type=int, default=settings.MPSC["TEBD_MAX_BOND"])

    def run(self, options: dict) -> bool:
        n = options["length"]
        spec = QuenchSpec(
            ground=XXZParams(n, options["ground_jz"], options["ground_hz"]),
            quench=XXZParams(n, options["quench_jz"], options["quench_hz"]),
            dt=options["dt"],
            n_steps=options["steps"],
            record_every=options["record_every"],
        )
        dmrg_cfg = DmrgConfig(
            truncation_cutoff=settings.MPSC["DMRG_CUTOFF"],
            max_bond=settings.MPSC["DMRG_MAX_BOND"],
            max_sweeps=settings.MPSC["DMRG_MAX_SWEEPS"],
        )
        opts = self.method_options(options, layer_sweep=True)
        config = self.resolved_config(
            options,
            quench_spec=spec.to_dict(),
            dmrg=dmrg_cfg.to_dict(),
            method_options=opts.to_dict(),
        )
        outcome = run_quench(
            spec,
            options["method"],
            dmrg_cfg,
            opts,
            tebd_dt=options["tebd_dt"],
            tebd_policy=TruncationPolicy.from_cutoff(options["tebd_cutoff"]),
            max_bond_cap=options["tebd_max_bond"],
        )
        reference = outcome.reference.to_frame()
        formats = self.formats(options)
        if "csv" in formats:
            write_csv(outcome.table, self.output(options, ".csv"), config)
            write_csv(reference, self.output(options, "_reference.csv"), config)
        if "json" in formats:
            data = {
                "steps": frame_records(outcome.table),
                "reference": frame_records(reference),
                "reference_completed": outcome.reference.completed,
            }
            if outcome.preparation is not None:
                data["preparation"] = outcome.preparation.to_dict()
            write_json(data, self.output(options, ".json"), config)
        if "svg" in formats:
            series = {
                options["method"]: (outcome.table["t"].to_numpy(), outcome.table["sm"].to_numpy()),
                "reference (TEBD)": (reference["t"].to_numpy(), reference["sm"].to_numpy()),
            }
            plot_lines(series, self.output(options, ".svg"), xlabel="t", ylabel="staggered magnetization")
        self.stdout.write(outcome.table.to_string(index=False))
        converged = outcome.preparation is None or outcome.preparation.converged
        return converged and outcome.reference.completed
