import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from appCore.exceptions import DimensionError
from appCore.exceptions import GateValidationError
from appCore.exceptions import SiteIndexError
from appOracle.dense import dense_apply_gate
from appOracle.dense import mps_to_dense
from appTensor.mps import MPSState
from appTensor.mps import apply_gate
from appTensor.mps import basis_state
from appTensor.mps import bond_dimensions
from appTensor.mps import canonicalize
from appTensor.mps import fidelity
from appTensor.mps import inner_product
from appTensor.mps import isometry_residuals
from appTensor.mps import log10_fidelity
from appTensor.mps import max_bond
from appTensor.mps import neel_state
from appTensor.mps import normalize
from appTensor.mps import product_state
from appTensor.mps import random_mps
from appTensor.mps import schmidt_values
from appTensor.mps import zero_state
from appTensor.truncation import TruncationPolicy

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def test_zero_state_is_a_bond_one_product():
    s = zero_state(5)
    assert bond_dimensions(s) == [1, 1, 1, 1]
    vec = mps_to_dense(s)
    assert vec[0] == pytest.approx(1.0)
    assert np.linalg.norm(vec) == pytest.approx(1.0)


def test_neel_state_sets_odd_sites():
    vec = mps_to_dense(neel_state(4))
    # little-endian index of bits 0,1,0,1
    assert abs(vec[2 + 8]) == pytest.approx(1.0)


def test_random_mps_bond_profile(rng):
    s = random_mps(8, 4, rng)
    assert bond_dimensions(s) == [2, 4, 4, 4, 4, 4, 2]
    assert max_bond(s) == 4
    assert inner_product(s, s) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "tensors",
    [
        (np.zeros((1, 3, 1)),),
        (np.zeros((2, 2, 1)),),
        (np.zeros((1, 2, 2)), np.zeros((3, 2, 1))),
    ],
)
def test_malformed_tensors_are_rejected(tensors: tuple):
    with pytest.raises(DimensionError):
        MPSState(tensors)


def test_zero_amplitude_site_is_rejected():
    with pytest.raises(DimensionError):
        product_state([[1, 0], [0, 0]])


def test_inner_product_matches_dense(rng):
    a = random_mps(8, 4, rng)
    b = random_mps(8, 4, rng)
    expected = np.vdot(mps_to_dense(a), mps_to_dense(b))
    assert inner_product(a, b) == pytest.approx(expected, abs=1e-10)


def test_length_mismatch_is_rejected():
    with pytest.raises(DimensionError):
        inner_product(zero_state(3), zero_state(4))


def test_orthogonal_states_have_zero_fidelity():
    a = zero_state(3)
    b = basis_state([1, 0, 0])
    assert log10_fidelity(a, b) == -math.inf
    assert fidelity(a, b) == 0.0


def test_log10_fidelity_survives_underflow():
    # 400 sites of overlap cos(0.3)^2 each
    tilted = product_state([[math.cos(0.3), math.sin(0.3)]] * 400)
    expected = 400 * math.log10(math.cos(0.3) ** 2)
    assert log10_fidelity(zero_state(400), tilted) == pytest.approx(expected, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), center=st.integers(0, 5))
def test_canonicalize_is_a_gauge_change(seed: int, center: int):
    s = random_mps(6, 4, np.random.default_rng(seed))
    c = canonicalize(s, center)
    assert c.canonical_center == center
    assert max(isometry_residuals(c)) < 1e-10
    assert abs(inner_product(normalize(c), s)) == pytest.approx(1.0, abs=1e-10)


def test_isometry_residuals_need_a_center():
    s = MPSState((np.ones((1, 2, 1)),))
    with pytest.raises(SiteIndexError):
        isometry_residuals(s)


@pytest.mark.parametrize("qubits", [(2, 3), (3, 2), (1, 5), (5, 1), (3, 4, 5), (0,)])
def test_apply_gate_matches_dense(rng, qubits: tuple):
    s = random_mps(7, 4, rng)
    u = unitary_group.rvs(2 ** len(qubits), random_state=rng)
    out = apply_gate(s, qubits, u)
    expected = dense_apply_gate(mps_to_dense(s), qubits, u, 7)
    assert np.allclose(mps_to_dense(out), expected, atol=1e-10)
    assert out.truncation_error == pytest.approx(0.0, abs=1e-14)


def test_apply_gate_rejects_non_unitary():
    with pytest.raises(GateValidationError):
        apply_gate(zero_state(2), (0, 1), np.ones((4, 4)))


def test_apply_gate_rejects_spread_multiqubit_gate():
    with pytest.raises(SiteIndexError):
        apply_gate(zero_state(5), (0, 2, 4), np.eye(8))


def test_bond_cap_truncates_and_records_error(rng):
    s = random_mps(6, 8, rng)
    u = unitary_group.rvs(4, random_state=rng)
    out = apply_gate(s, (2, 3), u, TruncationPolicy(max_bond=2))
    assert bond_dimensions(out)[2] == 2
    assert out.truncation_error > 0.0
    assert fidelity(out, apply_gate(s, (2, 3), u)) <= 1.0


def test_bell_pair_schmidt_values():
    s = apply_gate(zero_state(3), (0,), HADAMARD)
    s = apply_gate(s, (0, 1), CNOT)
    assert np.allclose(schmidt_values(s, 0), [1 / math.sqrt(2)] * 2)
    assert np.allclose(schmidt_values(s, 1), [1.0])
    with pytest.raises(SiteIndexError):
        schmidt_values(s, 2)
