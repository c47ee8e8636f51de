import numpy as np
import pytest
from scipy.stats import unitary_group

from appCore.exceptions import SiteIndexError
from appOracle.dense import SZ
from appOracle.dense import dense_correlation
from appOracle.dense import dense_expectation_sz
from appOracle.dense import mps_to_dense
from appTensor.mps import apply_gate
from appTensor.mps import inner_product
from appTensor.mps import neel_state
from appTensor.mps import random_mps
from appTensor.observables import correlation_matrix
from appTensor.observables import expectation_sz
from appTensor.observables import local_expectations
from appTensor.observables import overlap_environments
from appTensor.observables import two_site_correlation
from appTensor.observables import two_site_environment


def test_local_expectations_match_dense(rng):
    s = random_mps(6, 4, rng)
    vec = mps_to_dense(s)
    values = local_expectations(s, SZ).real
    expected = [dense_expectation_sz(vec, k, 6) for k in range(6)]
    assert np.allclose(values, expected, atol=1e-10)
    assert expectation_sz(s, 3) == pytest.approx(expected[3], abs=1e-10)


def test_neel_magnetization_pattern():
    values = local_expectations(neel_state(4), SZ).real
    assert np.allclose(values, [0.5, -0.5, 0.5, -0.5])


@pytest.mark.parametrize(("i", "j"), [(0, 1), (1, 4), (5, 2)])
def test_two_site_correlation_matches_dense(rng, i: int, j: int):
    s = random_mps(6, 4, rng)
    expected = dense_correlation(mps_to_dense(s), i, j, 6)
    assert two_site_correlation(s, i, j) == pytest.approx(expected, abs=1e-10)


def test_correlation_matrix_is_symmetric_with_undefined_diagonal(rng):
    table = correlation_matrix(random_mps(5, 2, rng))
    assert np.all(np.isnan(np.diag(table)))
    off = ~np.eye(5, dtype=bool)
    assert np.allclose(table[off], table.T[off])
    with pytest.raises(SiteIndexError):
        two_site_correlation(neel_state(5), 2, 2)


def test_product_state_has_no_connected_correlation():
    assert two_site_correlation(neel_state(6), 0, 5) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize(("i", "j"), [(1, 2), (2, 1), (0, 4), (4, 0)])
def test_two_site_environment_contracts_to_gate_overlap(rng, i: int, j: int):
    bra = random_mps(5, 4, rng)
    ket = random_mps(5, 4, rng)
    g = unitary_group.rvs(4, random_state=rng)
    env = two_site_environment(bra, ket, i, j)
    expected = inner_product(bra, apply_gate(ket, (i, j), g))
    assert np.sum(env * g) == pytest.approx(expected, abs=1e-10)


def test_shared_environments_give_the_same_tensor(rng):
    bra = random_mps(6, 2, rng)
    ket = random_mps(6, 2, rng)
    envs = overlap_environments(bra, ket)
    for i, j in [(0, 1), (2, 3), (1, 5)]:
        assert np.allclose(two_site_environment(bra, ket, i, j, envs), two_site_environment(bra, ket, i, j))


def test_environment_trace_is_the_overlap(rng):
    bra = random_mps(4, 2, rng)
    ket = random_mps(4, 2, rng)
    assert np.trace(two_site_environment(bra, ket, 1, 2)) == pytest.approx(inner_product(bra, ket), abs=1e-12)
