from dataclasses import asdict
from dataclasses import dataclass

from appCore.exceptions import ConfigurationError


@dataclass(frozen=True)
class XXZParams:
    """H = sum_i (Sx Sx + Sy Sy + jz Sz Sz)_{i,i+1} - hz sum_i Sz_i, open boundaries."""

    length: int
    jz: float = 1.0
    hz: float = 0.0

    def __post_init__(self):
        if self.length < 2:  # noqa: PLR2004
            msg = f"An XXZ chain needs at least 2 sites, got {self.length}."
            raise ConfigurationError(msg)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DmrgConfig:
    """
    ``truncation_cutoff`` bounds the Schmidt norm of the discarded tail at
    each cut; the discarded weight budget is its square.
    """

    truncation_cutoff: float = 1e-4
    max_bond: int = 100
    max_sweeps: int = 10
    mixer: bool = True
    energy_tol: float = 1e-10
    mixer_amplitude: float = 1e-2
    mixer_decay: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.truncation_cutoff < 1.0:
            msg = f"truncation_cutoff must lie in (0, 1), got {self.truncation_cutoff}."
            raise ConfigurationError(msg)
        if self.max_bond < 1 or self.max_sweeps < 1:
            msg = "max_bond and max_sweeps must be positive."
            raise ConfigurationError(msg)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class QuenchSpec:
    """Prepare the ground state of ``ground``, then evolve under ``quench``."""

    ground: XXZParams
    quench: XXZParams
    dt: float = 1.0
    n_steps: int = 5
    record_every: float = 1.0

    def __post_init__(self):
        if self.dt <= 0.0 or self.record_every <= 0.0:
            msg = f"dt and record_every must be positive, got {self.dt} and {self.record_every}."
            raise ConfigurationError(msg)
        if self.n_steps < 0:
            msg = f"n_steps must be >= 0, got {self.n_steps}."
            raise ConfigurationError(msg)
        if self.ground.length != self.quench.length:
            msg = "Ground and quench Hamiltonians must have the same length."
            raise ConfigurationError(msg)

    @property
    def t_max(self) -> float:
        return self.dt * self.n_steps

    def to_dict(self) -> dict:
        return {
            "ground": self.ground.to_dict(),
            "quench": self.quench.to_dict(),
            "dt": self.dt,
            "n_steps": self.n_steps,
            "record_every": self.record_every,
        }
