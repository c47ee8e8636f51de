"""Local observables, correlations and overlap environments on MPS."""

import math

import numpy as np

from appCore.exceptions import DimensionError
from appCore.exceptions import SiteIndexError
from appCore.utils.validation import require_site
from appTensor.mps import MPSState
from appTensor.mps import _check_lengths
from appTensor.mps import _left_orthonormalize
from appTensor.mps import _move_center
from appTensor.mps import canonicalize

SZ = np.diag([0.5, -0.5]).astype(complex)


def _site_expectation(a: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.einsum("asb,st,atb->", a.conj(), op, a))


def local_expectations(s: MPSState, op) -> np.ndarray:
    """<op_k> for every site k in one sweep of the orthogonality center."""
    op = np.asarray(op, dtype=complex)
    tensors = list(s.tensors)
    _move_center(tensors, s.canonical_center, 0)
    values = np.empty(s.length, dtype=complex)
    for k in range(s.length):
        a = tensors[k]
        norm2 = np.vdot(a, a).real
        values[k] = _site_expectation(a, op) / norm2
        if k < s.length - 1:
            _left_orthonormalize(tensors, k)
    return values


def expectation_sz(s: MPSState, k: int) -> float:
    require_site(k, s.length)
    a = canonicalize(s, k).tensors[k]
    return float(_site_expectation(a, SZ).real / np.vdot(a, a).real)


def _carry(env: np.ndarray, a: np.ndarray) -> np.ndarray:
    env = np.tensordot(env, a, axes=(1, 0))
    return np.tensordot(a.conj(), env, axes=([0, 1], [0, 1]))


def two_site_correlation(s: MPSState, i: int, j: int) -> float:
    """Connected C_zz(i, j) = <Sz_i Sz_j> - <Sz_i><Sz_j>; undefined on the diagonal."""
    require_site(i, s.length)
    require_site(j, s.length)
    if i == j:
        msg = f"C_zz({i}, {j}) is undefined on the diagonal."
        raise SiteIndexError(msg)
    lo, hi = min(i, j), max(i, j)
    c = canonicalize(s, lo)
    a = c.tensors[lo]
    norm2 = np.vdot(a, a).real
    # Open the left bond of lo with identity, since everything left of lo is isometric.
    env_zz = np.einsum("asb,st,atc->bc", a.conj(), SZ, a)
    env_z1 = np.einsum("asb,asc->bc", a.conj(), a)
    for k in range(lo + 1, hi):
        env_zz = _carry(env_zz, c.tensors[k])
        env_z1 = _carry(env_z1, c.tensors[k])
    b = c.tensors[hi]
    zz = np.einsum("ab,asc,st,btc->", env_zz, b.conj(), SZ, b).real / norm2
    z_hi = np.einsum("ab,asc,st,btc->", env_z1, b.conj(), SZ, b).real / norm2
    z_lo = _site_expectation(a, SZ).real / norm2
    return float(zz - z_lo * z_hi)


def correlation_matrix(s: MPSState) -> np.ndarray:
    """Full C_zz table with NaN on the diagonal."""
    size = s.length
    table = np.full((size, size), np.nan)
    for i in range(size):
        for j in range(i + 1, size):
            table[i, j] = table[j, i] = two_site_correlation(s, i, j)
    return table


# ======================== MPO Energies =========================
def mpo_left_update(env: np.ndarray, a: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Extend a (bra, mpo, ket) left environment by one site."""
    x = np.tensordot(env, a, axes=([2], [0]))
    x = np.tensordot(x, w, axes=([1, 2], [0, 2]))
    x = np.tensordot(x, a.conj(), axes=([0, 2], [0, 1]))
    return x.transpose(2, 1, 0)


def mpo_right_update(env: np.ndarray, b: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Extend a (bra, mpo, ket) right environment by one site."""
    x = np.tensordot(b, env, axes=([2], [2]))
    x = np.tensordot(x, w, axes=([1, 3], [2, 3]))
    x = np.tensordot(x, b.conj(), axes=([1, 3], [2, 1]))
    return x.transpose(2, 1, 0)


def mpo_expectation(s: MPSState, h) -> float:
    """<s|H|s> / <s|s>."""
    if s.length != h.length:
        msg = f"Length mismatch: state has {s.length} sites, operator {h.length}."
        raise DimensionError(msg)
    env = np.ones((1, 1, 1), dtype=complex)
    for a, w in zip(s.tensors, h.tensors, strict=True):
        env = mpo_left_update(env, a, w)
    norm_env = np.ones((1, 1), dtype=complex)
    for a in s.tensors:
        norm_env = _carry(norm_env, a)
    norm2 = norm_env[0, 0].real
    return float(env[0, 0, 0].real / norm2)


# ======================== Overlap Environments =========================
def overlap_environments(bra: MPSState, ket: MPSState) -> tuple[list, list]:
    """
    Transfer environments of <bra|ket>.

    ``lefts[k]`` contracts sites 0..k-1 and ``rights[k]`` sites k+1..L-1; both
    are indexed (bra bond, ket bond). Norm factors are not included.
    """
    _check_lengths(bra, ket)
    size = bra.length
    lefts = [np.ones((1, 1), dtype=complex)]
    for k in range(size - 1):
        lefts.append(_carry_pair(lefts[-1], bra.tensors[k], ket.tensors[k]))
    rights = [np.ones((1, 1), dtype=complex)]
    for k in range(size - 1, 0, -1):
        x = np.tensordot(ket.tensors[k], rights[-1], axes=(2, 1))
        rights.append(np.tensordot(bra.tensors[k].conj(), x, axes=([1, 2], [1, 2])))
    rights.reverse()
    return lefts, rights


def _carry_pair(env: np.ndarray, bra_t: np.ndarray, ket_t: np.ndarray) -> np.ndarray:
    x = np.tensordot(env, ket_t, axes=(1, 0))
    return np.tensordot(bra_t.conj(), x, axes=([0, 1], [0, 1]))


def two_site_environment(bra: MPSState, ket: MPSState, i: int, j: int, envs=None) -> np.ndarray:
    """
    4x4 tensor E with <bra| G_ij |ket> = sum_{o,n} E[o, n] G[o, n].

    G is indexed big-endian in the order (i, j). ``envs`` may carry the
    result of ``overlap_environments`` to reuse across pairs.
    """
    require_site(i, bra.length)
    require_site(j, bra.length)
    if i == j:
        msg = "A two-site environment needs two distinct sites."
        raise SiteIndexError(msg)
    lefts, rights = envs if envs is not None else overlap_environments(bra, ket)
    lo, hi = min(i, j), max(i, j)

    x = np.tensordot(lefts[lo], ket.tensors[lo], axes=(1, 0))
    x = np.tensordot(bra.tensors[lo].conj(), x, axes=([0], [0]))
    # (o_lo, bra bond, n_lo, ket bond)
    for k in range(lo + 1, hi):
        x = np.tensordot(x, ket.tensors[k], axes=(3, 0))
        x = np.tensordot(bra.tensors[k].conj(), x, axes=([0, 1], [1, 3]))
        x = x.transpose(1, 0, 2, 3)
    x = np.tensordot(x, ket.tensors[hi], axes=(3, 0))
    x = np.tensordot(bra.tensors[hi].conj(), x, axes=([0], [1]))
    # (o_hi, bra bond, o_lo, n_lo, n_hi, ket bond)
    x = np.tensordot(x, rights[hi], axes=([1, 5], [0, 1]))
    # x is (o_hi, o_lo, n_lo, n_hi)
    env = x.transpose(1, 0, 2, 3) if i < j else x.transpose(0, 1, 3, 2)
    scale = math.exp(bra.norm_log + ket.norm_log)
    return env.reshape(4, 4) * scale
