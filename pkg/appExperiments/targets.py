"""Benchmark target families."""

import logging

import numpy as np
from scipy.stats import unitary_group

from appAqcTensor.ansatz import brickwork_pairs
from appCircuit.gates import CNOT_MATRIX
from appCircuit.gates import u2
from appCore.exceptions import ConfigurationError
from appSimulator.simulator import run_gates
from appTensor.mps import MPSState
from appTensor.mps import normalize
from appTensor.mps import random_mps
from appTensor.mps import zero_state
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)

TARGET_POLICY = TruncationPolicy(threshold=1e-14)


def _controlled_type_unitary(rng: np.random.Generator) -> np.ndarray:
    """(A x B) CNOT (C x D) with Haar single-qubit factors; operator Schmidt rank 2."""
    a, b, c, d = (unitary_group.rvs(2, random_state=rng) for _ in range(4))
    return np.kron(a, b) @ CNOT_MATRIX @ np.kron(c, d)


def random_brickwork_target(length: int, rng: np.random.Generator) -> MPSState:
    """
    One brickwork layer on |0...0>: Haar SU4 on (0,1), (2,3), ... then
    controlled-type gates on (1,2), (3,4), .... Every cut has bond dimension <= 2.
    """
    if length < 2:  # noqa: PLR2004
        msg = f"A brickwork target needs at least 2 sites, got {length}."
        raise ConfigurationError(msg)
    gates = []
    for i, j in brickwork_pairs(length):
        matrix = unitary_group.rvs(4, random_state=rng) if i % 2 == 0 else _controlled_type_unitary(rng)
        gates.append(u2(i, j, matrix))
    return normalize(run_gates(zero_state(length), gates, TARGET_POLICY))


def random_target(length: int, chi: int, rng: np.random.Generator) -> MPSState:
    """χ=2 uses the brickwork family; other bond dimensions fall back to random tensors."""
    if chi == 2:  # noqa: PLR2004
        return random_brickwork_target(length, rng)
    logger.debug("No brickwork family for chi=%d, drawing random tensors", chi)
    return random_mps(length, chi, rng)
