"""Shared plumbing of the experiment management commands."""

import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand
from django.core.management.base import CommandError

from appCore.exceptions import MpscError
from appCore.utils.track_run import track_run
from appExperiments.reporting import FORMATS
from appExperiments.runners import MethodOptions

logger = logging.getLogger(__name__)

EXIT_NOT_CONVERGED = 2
DJANGO_OPTIONS = {
    "verbosity",
    "settings",
    "pythonpath",
    "traceback",
    "no_color",
    "force_color",
    "skip_checks",
}
LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.INFO, 3: logging.DEBUG}


class ExperimentCommand(BaseCommand):
    """
    Base for commands that run an experiment and write result files.

    Subclasses implement ``add_experiment_arguments`` and ``run``; ``run``
    returns True when every compiler or solver converged.
    """

    run_name = "experiment"
    default_formats = ("csv", "json")
    default_layers = 1

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, default=0, help="Root seed; every output is a function of it.")
        parser.add_argument(
            "--jobs",
            type=int,
            default=settings.MPSC["DEFAULT_JOBS"],
            help="Worker processes for independent instances.",
        )
        parser.add_argument("--out", default=f"results/{self.run_name}", help="Output path prefix.")
        parser.add_argument(
            "--format",
            action="append",
            choices=FORMATS,
            dest="formats",
            help="Output format; repeat for several (default: csv and json).",
        )
        parser.add_argument("--epsilon", type=float, default=1e-2, help="Target infidelity of the compilers.")
        parser.add_argument("--threshold", type=float, default=None, help="Simulation truncation threshold.")
        parser.add_argument("--layers", type=int, default=self.default_layers, help="Ansatz or staircase layers.")
        self.add_experiment_arguments(parser)

    def add_experiment_arguments(self, parser):
        pass

    def run(self, options: dict) -> bool:
        raise NotImplementedError

    # ======================== Helpers =========================
    def formats(self, options: dict) -> tuple[str, ...]:
        return tuple(dict.fromkeys(options["formats"] or self.default_formats))

    def output(self, options: dict, suffix: str) -> Path:
        return Path(f"{options['out']}{suffix}")

    def method_options(self, options: dict, **overrides) -> MethodOptions:
        return MethodOptions(
            epsilon=options["epsilon"],
            layers=options["layers"],
            threshold=options["threshold"],
            seed=options["seed"],
            **overrides,
        )

    def resolved_config(self, options: dict, **extra) -> dict:
        config = {k: v for k, v in options.items() if k not in DJANGO_OPTIONS}
        config["formats"] = list(self.formats(options))
        config["command"] = self.run_name
        config.update(extra)
        return config

    def _configure_logging(self, verbosity: int) -> None:
        level = LEVELS.get(verbosity, logging.DEBUG)
        if verbosity in (0, 3):
            logging.getLogger().setLevel(level)
            logging.getLogger("appExperiments").setLevel(level)

    def handle(self, *args, **options):
        self._configure_logging(options["verbosity"])
        with track_run(self.run_name) as run:
            try:
                converged = self.run(options)
            except MpscError as e:
                raise CommandError(str(e)) from e
            run.message = "converged" if converged else "finished without convergence"
        if not converged:
            msg = f"{self.run_name}: at least one compiler or solver did not converge."
            raise CommandError(msg, returncode=EXIT_NOT_CONVERGED)
