"""Starting points for the brickwork optimizer."""

import logging
import math

import numpy as np

from appAqcTensor.ansatz import BrickworkAnsatz
from appAqcTensor.config import TensorConfig
from appCore.exceptions import ConfigurationError
from appSimulator.simulator import simulate
from appTensor.compression import compress
from appTensor.mps import MPSState
from appTensor.mps import log10_fidelity
from appTensor.mps import normalize
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


def state_unitary(v) -> np.ndarray:
    """2x2 unitary taking |0> to the normalized amplitude pair ``v``."""
    v = np.asarray(v, dtype=complex).reshape(2)
    v = v / np.linalg.norm(v)
    return np.array([[v[0], -np.conj(v[1])], [v[1], np.conj(v[0])]], dtype=complex)


def chi1_initialize(target: MPSState) -> tuple[list[np.ndarray], float]:
    """Single-qubit layer preparing the best product approximation of ``target``, and its fidelity."""
    product, f = compress(normalize(target), 1, "variational")
    layer = [state_unitary(t.reshape(2)) for t in product.tensors]
    return layer, f


def initialize(target: MPSState, layers: int, cfg: TensorConfig) -> tuple[BrickworkAnsatz, np.ndarray]:
    """Ansatz and starting parameters for ``cfg.initialization``."""
    if cfg.initialization == "chi1":
        layer, f = chi1_initialize(target)
        logger.info("chi=1 initialization: fidelity %.6e", f)
        ansatz = BrickworkAnsatz(target.length, layers, cfg.connectivity, layer)
        return ansatz, np.zeros(ansatz.n_params)
    ansatz = BrickworkAnsatz(target.length, layers, cfg.connectivity)
    if cfg.initialization == "identity":
        return ansatz, np.zeros(ansatz.n_params)
    if cfg.initialization == "random":
        rng = np.random.default_rng(cfg.seed)
        return ansatz, rng.uniform(-math.pi, math.pi, ansatz.n_params)
    msg = f"Unknown initialization '{cfg.initialization}'."
    raise ConfigurationError(msg)


def initial_log10_fidelity(target: MPSState, ansatz: BrickworkAnsatz, params, policy: TruncationPolicy) -> float:
    """log10 of the starting fidelity; -inf when the overlap vanishes exactly."""
    state = simulate(ansatz.circuit(params), policy=policy).state
    return log10_fidelity(state, normalize(target))
