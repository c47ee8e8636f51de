import math

import numpy as np
import pytest

from appAdapt.ansatz import N_ANGLES
from appAdapt.ansatz import AnsatzBlock
from appAdapt.config import AdaptConfig
from appAdapt.gradients import candidate_pairs
from appAdapt.gradients import cost_gradient_at_zero
from appAdapt.gradients import select_pair
from appAdapt.rotations import block_cost
from appCircuit.gates import cnot
from appCircuit.gates import u1
from appCore.exceptions import NoCandidatePairsError
from appSimulator.simulator import run_gates
from appTensor.mps import random_mps
from appTensor.mps import zero_state
from appTensor.observables import two_site_environment
from appTensor.truncation import TruncationPolicy

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _bell_on(length: int, i: int):
    return run_gates(zero_state(length), [u1(i, HADAMARD), cnot(i, i + 1)], TruncationPolicy())


@pytest.mark.parametrize(("coupling", "count"), [("nearest-neighbour", 5), ("all-to-all", 15)])
def test_candidate_pairs(coupling, count):
    pairs = candidate_pairs(6, coupling)
    assert len(pairs) == count
    assert all(i < j for i, j in pairs)


@pytest.mark.parametrize("pair", [(1, 2), (0, 3)])
def test_gradient_matches_finite_differences(pair, rng):
    psi = random_mps(5, 2, rng)
    s = random_mps(5, 2, rng)
    axes = ("Y", "X", "Z", "Y", "Y", "X")
    grads = cost_gradient_at_zero(AnsatzBlock(pair, axes), psi, s)
    env = two_site_environment(s, psi, *pair)
    h = 1e-6
    for k in range(N_ANGLES):
        block = AnsatzBlock(pair, axes)
        numeric = (block_cost(block.with_angle(k, h), env) - block_cost(block.with_angle(k, -h), env)) / (2 * h)
        assert grads[k] == pytest.approx(numeric, abs=1e-7), k


def test_bell_pair_is_selected():
    cfg = AdaptConfig(sim_threshold=0.0)
    pair, norm = select_pair(_bell_on(4, 1), zero_state(4), cfg)
    assert pair == (1, 2)
    assert norm > 0.1


def test_forbidden_pairs_are_skipped():
    cfg = AdaptConfig(sim_threshold=0.0)
    pair, _ = select_pair(_bell_on(4, 1), zero_state(4), cfg, forbidden={(1, 2)})
    assert pair != (1, 2)
    with pytest.raises(NoCandidatePairsError):
        select_pair(_bell_on(2, 0), zero_state(2), cfg, forbidden={(0, 1)})


def test_default_axes_see_a_real_target():
    psi, s = _bell_on(4, 1), zero_state(4)
    assert AdaptConfig(sim_threshold=0.0).gradient_axes == ("Y",) * N_ANGLES
    z_grads = cost_gradient_at_zero(AnsatzBlock((1, 2), ("Z",) * N_ANGLES), psi, s)
    y_grads = cost_gradient_at_zero(AnsatzBlock((1, 2)), psi, s)
    assert np.allclose(z_grads, 0.0, atol=1e-12)
    assert np.linalg.norm(y_grads) > 0.1
