from dataclasses import dataclass

from django.conf import settings

from appCore.exceptions import ConfigurationError

OPTIMIZERS = ("lbfgs", "adam")
INITIALIZATIONS = ("chi1", "identity", "random")


@dataclass(frozen=True)
class TensorConfig:
    """Settings of the brickwork compiler; ``sim_threshold`` None reads the project default."""

    epsilon: float = 1e-2
    sim_threshold: float | None = None
    optimizer: str = "lbfgs"
    gtol: float = 1e-8
    max_iterations: int = 10000
    learning_rate: float = 1e-2
    initialization: str = "chi1"
    connectivity: tuple | None = None
    seed: int = 0
    jitter: float = 1e-6

    def __post_init__(self):
        if self.sim_threshold is None:
            object.__setattr__(self, "sim_threshold", float(settings.MPSC["AQC_TENSOR_SIM_THRESHOLD"]))
        if not 0.0 < self.epsilon < 1.0:
            msg = f"epsilon must lie in (0, 1), got {self.epsilon}."
            raise ConfigurationError(msg)
        if self.sim_threshold < 0.0 or self.gtol <= 0.0 or self.learning_rate <= 0.0:
            msg = "sim_threshold must be >= 0; gtol and learning_rate must be positive."
            raise ConfigurationError(msg)
        if self.optimizer not in OPTIMIZERS:
            msg = f"Unknown optimizer '{self.optimizer}', expected one of {OPTIMIZERS}."
            raise ConfigurationError(msg)
        if self.initialization not in INITIALIZATIONS:
            msg = f"Unknown initialization '{self.initialization}', expected one of {INITIALIZATIONS}."
            raise ConfigurationError(msg)
        if self.max_iterations < 0:
            msg = f"max_iterations must be >= 0, got {self.max_iterations}."
            raise ConfigurationError(msg)
        if self.connectivity is not None:
            pairs = tuple((int(i), int(j)) for i, j in self.connectivity)
            if any(i == j for i, j in pairs):
                msg = f"Connectivity pairs must join distinct qubits, got {pairs}."
                raise ConfigurationError(msg)
            object.__setattr__(self, "connectivity", pairs)

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "sim_threshold": self.sim_threshold,
            "optimizer": self.optimizer,
            "gtol": self.gtol,
            "max_iterations": self.max_iterations,
            "learning_rate": self.learning_rate,
            "initialization": self.initialization,
            "connectivity": None if self.connectivity is None else [list(p) for p in self.connectivity],
            "seed": self.seed,
        }
