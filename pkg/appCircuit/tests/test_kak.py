import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from appCircuit.gates import CNOT_MATRIX
from appCircuit.gates import CZ_MATRIX
from appCircuit.gates import SWAP_MATRIX
from appCircuit.kak import cnot_cost_from_coefficients
from appCircuit.kak import kak_decompose
from appCircuit.su4 import interaction
from appCircuit.su4 import su4_from_params


def _dressed(core: np.ndarray, seed: int) -> np.ndarray:
    a, b, c, d = (unitary_group.rvs(2, random_state=seed + k) for k in range(4))
    return np.kron(a, b) @ core @ np.kron(c, d)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**31 - 1))
def test_decomposition_rebuilds_haar_unitaries(seed):
    u = unitary_group.rvs(4, random_state=seed)
    d = kak_decompose(u)
    assert np.allclose(d.rebuild(), u, atol=1e-8)
    params, phase = d.su4_params()
    assert np.allclose(np.exp(1j * phase) * su4_from_params(params), u, atol=1e-8)


def test_haar_unitary_needs_three_cnots():
    assert kak_decompose(unitary_group.rvs(4, random_state=11)).cnot_cost == 3


@pytest.mark.parametrize(
    ("core", "expected"),
    [
        (np.eye(4, dtype=complex), 0),
        (CNOT_MATRIX, 1),
        (CZ_MATRIX, 1),
        (interaction(np.pi / 4, np.pi / 4, 0), 2),
        (interaction(0.3, 0.1, 0), 2),
        (SWAP_MATRIX, 3),
    ],
)
def test_cnot_cost_is_invariant_under_local_dressing(core, expected):
    assert kak_decompose(core).cnot_cost == expected
    assert kak_decompose(_dressed(core, 5)).cnot_cost == expected


@pytest.mark.parametrize(
    ("coefficients", "expected"),
    [
        ((0.0, 0.0, 0.0), 0),
        ((np.pi / 4, 0.0, 0.0), 1),
        ((0.3, 0.1, 0.0), 2),
        ((0.3, 0.2, 0.1), 3),
        ((np.pi / 4, np.pi / 4, np.pi / 4), 3),
    ],
)
def test_cost_from_coefficients(coefficients, expected):
    assert cnot_cost_from_coefficients(coefficients) == expected


def test_coefficients_of_cnot():
    a, b, c = kak_decompose(CNOT_MATRIX).coefficients
    assert abs(a) == pytest.approx(np.pi / 4)
    assert b == pytest.approx(0, abs=1e-9)
    assert c == pytest.approx(0, abs=1e-9)
