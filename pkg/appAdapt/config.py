from dataclasses import dataclass

from django.conf import settings

from appCore.exceptions import ConfigurationError

COUPLINGS = ("nearest-neighbour", "all-to-all")
STARTS = ("chi1", "none", "user")
AXES = ("X", "Y", "Z")


def _default_threshold() -> float:
    return float(settings.MPSC["ADAPT_SIM_THRESHOLD"])


@dataclass(frozen=True)
class AdaptConfig:
    """
    Settings of the adaptive compiler.

    ``max_blocks`` None means 5 * L. ``rotosolve_window`` None rotosolves
    every block; k keeps only the last k blocks active and absorbs older
    ones into the cached target. ``gradient_axes`` are the rotation axes of
    a candidate block during pair selection.
    """

    epsilon: float = 1e-2
    rotosolve_frequency: int = 1
    rotoselect_tol: float = 1e-5
    rotosolve_tol: float = 1e-3
    coupling: str = "nearest-neighbour"
    starting_circuit: str = "chi1"
    user_circuit: object = None
    sim_threshold: float | None = None
    max_blocks: int | None = None
    rotosolve_window: int | None = None
    gradient_axes: tuple = ("Y",) * 6
    max_rotoselect_sweeps: int = 10
    max_rotosolve_sweeps: int = 50

    def __post_init__(self):
        if self.sim_threshold is None:
            object.__setattr__(self, "sim_threshold", _default_threshold())
        if not 0.0 < self.epsilon < 1.0:
            msg = f"epsilon must lie in (0, 1), got {self.epsilon}."
            raise ConfigurationError(msg)
        if self.rotoselect_tol <= 0.0 or self.rotosolve_tol <= 0.0 or self.sim_threshold < 0.0:
            msg = "Tolerances must be positive."
            raise ConfigurationError(msg)
        if self.coupling not in COUPLINGS:
            msg = f"Unknown coupling '{self.coupling}', expected one of {COUPLINGS}."
            raise ConfigurationError(msg)
        if self.starting_circuit not in STARTS:
            msg = f"Unknown starting circuit '{self.starting_circuit}', expected one of {STARTS}."
            raise ConfigurationError(msg)
        if self.starting_circuit == "user" and self.user_circuit is None:
            msg = "starting_circuit='user' needs user_circuit."
            raise ConfigurationError(msg)
        if self.rotosolve_frequency < 0:
            msg = f"rotosolve_frequency must be >= 0, got {self.rotosolve_frequency}."
            raise ConfigurationError(msg)
        if self.max_blocks is not None and self.max_blocks < 0:
            msg = f"max_blocks must be >= 0, got {self.max_blocks}."
            raise ConfigurationError(msg)
        if self.rotosolve_window is not None and self.rotosolve_window < 1:
            msg = f"rotosolve_window must be >= 1, got {self.rotosolve_window}."
            raise ConfigurationError(msg)
        axes = tuple(a.upper() for a in self.gradient_axes)
        if len(axes) != 6 or any(a not in AXES for a in axes):  # noqa: PLR2004
            msg = f"gradient_axes must be 6 labels from {AXES}, got {self.gradient_axes}."
            raise ConfigurationError(msg)
        object.__setattr__(self, "gradient_axes", axes)

    def block_cap(self, length: int) -> int:
        return 5 * length if self.max_blocks is None else self.max_blocks

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "rotosolve_frequency": self.rotosolve_frequency,
            "rotoselect_tol": self.rotoselect_tol,
            "rotosolve_tol": self.rotosolve_tol,
            "coupling": self.coupling,
            "starting_circuit": self.starting_circuit,
            "sim_threshold": self.sim_threshold,
            "max_blocks": self.max_blocks,
            "rotosolve_window": self.rotosolve_window,
            "gradient_axes": list(self.gradient_axes),
        }
