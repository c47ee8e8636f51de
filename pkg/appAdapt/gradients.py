"""Cost gradients of candidate blocks and gradient-based pair selection."""

import itertools
import logging

import numpy as np

from appAdapt.ansatz import N_ANGLES
from appAdapt.ansatz import AnsatzBlock
from appAdapt.ansatz import operator_gradient
from appAdapt.config import AdaptConfig
from appCore.exceptions import NoCandidatePairsError
from appTensor.mps import MPSState
from appTensor.observables import overlap_environments
from appTensor.observables import two_site_environment

logger = logging.getLogger(__name__)


def candidate_pairs(length: int, coupling: str) -> list[tuple[int, int]]:
    if coupling == "all-to-all":
        return list(itertools.combinations(range(length), 2))
    return [(i, i + 1) for i in range(length - 1)]


def gradient_from_environment(candidate: AnsatzBlock, env: np.ndarray) -> np.ndarray:
    """
    dC/dtheta at theta = 0 for C = 1 - |<s|A(theta)|psi>|^2.

    With half-angle rotations this is -Im(<s|A_k|psi> conj(<s|psi>)), where
    ``env`` is the two-site environment of <s|.|psi> on the candidate pair.
    """
    overlap = np.trace(env)
    grads = np.empty(N_ANGLES)
    for k in range(N_ANGLES):
        gk = np.sum(env * operator_gradient(candidate, k))
        grads[k] = -(gk * np.conj(overlap)).imag
    return grads


def cost_gradient_at_zero(
    candidate: AnsatzBlock,
    psi: MPSState,
    s: MPSState,
    envs=None,
) -> np.ndarray:
    """Gradient of the cost when ``candidate`` (at zero angles) is applied to ``psi``."""
    env = two_site_environment(s, psi, *candidate.pair, envs=envs)
    return gradient_from_environment(AnsatzBlock(candidate.pair, candidate.axes), env)


def select_pair(
    psi: MPSState,
    s: MPSState,
    cfg: AdaptConfig,
    forbidden=frozenset(),
) -> tuple[tuple[int, int], float]:
    """
    Allowed pair whose zero-angle block has the largest cost-gradient norm.

    Ties go to the lowest (i, j).
    """
    pairs = [p for p in candidate_pairs(psi.length, cfg.coupling) if p not in forbidden]
    if not pairs:
        msg = f"No qubit pair left for {cfg.coupling} coupling on {psi.length} qubits."
        raise NoCandidatePairsError(msg)
    envs = overlap_environments(s, psi)
    best, best_norm = pairs[0], -1.0
    for pair in pairs:
        candidate = AnsatzBlock(pair, axes=cfg.gradient_axes)
        norm = float(np.linalg.norm(cost_gradient_at_zero(candidate, psi, s, envs)))
        logger.debug("Pair %s: gradient norm %.3e", pair, norm)
        if norm > best_norm:
            best, best_norm = pair, norm
    return best, best_norm
