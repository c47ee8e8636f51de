from django.conf import settings

from appExperiments.command import ExperimentCommand
from appExperiments.reporting import frame_records
from appExperiments.reporting import write_csv
from appExperiments.reporting import write_json
from appExperiments.runners import METHODS
from appExperiments.runners import run_xxz_groundstate
from appExperiments.runners import validate_methods
from appSpin.params import DmrgConfig
from appSpin.params import XXZParams


class Command(ExperimentCommand):
    help = "DMRG ground state of the XXZ chain, then every requested preparation method on it."
    run_name = "xxz_groundstate"
    default_layers = 3

    def add_experiment_arguments(self, parser):
        parser.add_argument("--length", type=int, default=50)
        parser.add_argument("--jz", type=float, default=2.5)
        parser.add_argument("--hz", type=float, default=0.0)
        parser.add_argument("--ran-layers", type=int, default=5)
        parser.add_argument("--cutoff", type=float, default=settings.MPSC["DMRG_CUTOFF"])
        parser.add_argument("--max-bond", type=int, default=settings.MPSC["DMRG_MAX_BOND"])
        parser.add_argument("--max-sweeps", type=int, default=settings.MPSC["DMRG_MAX_SWEEPS"])
        parser.add_argument("--no-mixer", action="store_true")
        parser.add_argument("--method", action="append", dest="methods", choices=METHODS)

    def run(self, options: dict) -> bool:
        methods = validate_methods(options["methods"] or ())
        p = XXZParams(options["length"], options["jz"], options["hz"])
        dmrg_cfg = DmrgConfig(
            truncation_cutoff=options["cutoff"],
            max_bond=options["max_bond"],
            max_sweeps=options["max_sweeps"],
            mixer=not options["no_mixer"],
        )
        opts = self.method_options(options, layer_sweep=True, ran_layers=options["ran_layers"])
        config = self.resolved_config(
            options,
            methods=list(methods),
            hamiltonian=p.to_dict(),
            dmrg=dmrg_cfg.to_dict(),
            method_options=opts.to_dict(),
        )
        outcome = run_xxz_groundstate(p, dmrg_cfg, methods, opts)
        formats = self.formats(options)
        if "csv" in formats:
            write_csv(outcome.table, self.output(options, ".csv"), config)
        if "json" in formats:
            data = {
                "dmrg": outcome.ground.stats(),
                "table": frame_records(outcome.table),
                "results": {m: r.to_dict() for m, r in outcome.results.items()},
            }
            write_json(data, self.output(options, ".json"), config)
        if "svg" in formats:
            self.stderr.write("xxz_groundstate has no plot; skipping svg.")
        self.stdout.write(f"DMRG: {outcome.ground.stats()}")
        self.stdout.write(outcome.table.to_string(index=False))
        return outcome.ground.converged and all(r.converged for r in outcome.results.values())
