from django.conf import settings

from appExperiments.command import ExperimentCommand
from appExperiments.reporting import frame_records
from appExperiments.reporting import plot_lines
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json
from appExperiments.runners import INIT_STRATEGIES
from appExperiments.runners import run_init_scaling
from appSpin.params import DmrgConfig


class Command(ExperimentCommand):
    help = "Starting fidelity of chi=1, random and identity initializations against chain length, with slope fits."
    run_name = "init_scaling"
    default_formats = ("csv", "json", "svg")

    def add_experiment_arguments(self, parser):
        parser.add_argument("--lengths", type=int, nargs="+", default=[50, 100, 150, 200, 250, 300])
        parser.add_argument("--jz", type=float, default=2.5)
        parser.add_argument("--hz", type=float, default=0.0)
        parser.add_argument("--cutoff", type=float, default=settings.MPSC["DMRG_CUTOFF"])
        parser.add_argument("--max-bond", type=int, default=settings.MPSC["DMRG_MAX_BOND"])
        parser.add_argument("--max-sweeps", type=int, default=settings.MPSC["DMRG_MAX_SWEEPS"])

    def run(self, options: dict) -> bool:
        dmrg_cfg = DmrgConfig(
            truncation_cutoff=options["cutoff"],
            max_bond=options["max_bond"],
            max_sweeps=options["max_sweeps"],
        )
        config = self.resolved_config(options, dmrg=dmrg_cfg.to_dict())
        points, fits = run_init_scaling(
            options["lengths"],
            options["jz"],
            options["hz"],
            dmrg_cfg,
            seed=options["seed"],
            jobs=options["jobs"],
        )
        formats = self.formats(options)
        if "csv" in formats:
            write_csv(points, self.output(options, ".csv"), config)
            write_csv(fits, self.output(options, "_fits.csv"), config)
        if "json" in formats:
            data = {"points": frame_records(points), "fits": frame_records(fits)}
            write_json(data, self.output(options, ".json"), config)
        if "svg" in formats:
            series = {}
            for strategy in INIT_STRATEGIES:
                part = points[points["strategy"] == strategy]
                series[strategy] = (part["length"].to_numpy(), part["log10_fidelity"].to_numpy())
            plot_lines(series, self.output(options, ".svg"), xlabel="L", ylabel="log10 F")
        self.stdout.write(fits.to_string(index=False))
        return True
