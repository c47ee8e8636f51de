"""Bond-dimension compression of MPS by SVD sweeps or variational fitting."""

import logging

import numpy as np
import scipy.linalg

from appCore.exceptions import ConfigurationError
from appTensor.mps import MPSState
from appTensor.mps import canonicalize
from appTensor.mps import fidelity
from appTensor.mps import normalize
from appTensor.truncation import TruncationPolicy
from appTensor.truncation import truncated_svd

logger = logging.getLogger(__name__)

VARIATIONAL_TOL = 1e-9
VARIATIONAL_MAX_SWEEPS = 100
METHODS = ("svd", "variational")


def svd_compress(s: MPSState, target_chi: int) -> MPSState:
    """Right-canonicalize, then truncate every bond in one left-to-right sweep."""
    policy = TruncationPolicy(threshold=0.0, max_bond=target_chi)
    tensors = list(canonicalize(s, 0).tensors)
    discarded_total = 0.0
    for k in range(len(tensors) - 1):
        a = tensors[k]
        chi_l, d, chi_r = a.shape
        u, svals, vh, discarded = truncated_svd(a.reshape(chi_l * d, chi_r), policy)
        discarded_total += discarded
        tensors[k] = u.reshape(chi_l, d, -1)
        tensors[k + 1] = np.tensordot(svals[:, None] * vh, tensors[k + 1], axes=(1, 0))
    out = MPSState(
        tuple(tensors),
        canonical_center=len(tensors) - 1,
        truncation_error=s.truncation_error + discarded_total,
    )
    return normalize(out)


def _fit_site(left, ket_t, right):
    m = np.tensordot(left, ket_t, axes=(1, 0))
    m = np.tensordot(m, right, axes=(2, 1))
    return m, np.linalg.norm(m)


def _push_left_env(env, bra_t, ket_t):
    x = np.tensordot(env, ket_t, axes=(1, 0))
    return np.tensordot(bra_t.conj(), x, axes=([0, 1], [0, 1]))


def _push_right_env(env, bra_t, ket_t):
    x = np.tensordot(ket_t, env, axes=(2, 1))
    return np.tensordot(bra_t.conj(), x, axes=([1, 2], [1, 2]))


def variational_compress(
    s: MPSState,
    target_chi: int,
    tol: float = VARIATIONAL_TOL,
    max_sweeps: int = VARIATIONAL_MAX_SWEEPS,
) -> tuple[MPSState, float]:
    """
    Single-site sweeping fit of a bond-``target_chi`` state to ``s``.

    Seeded from ``svd_compress``. Each site update maximizes the overlap with
    the rest of the ansatz fixed, so the fidelity never decreases.
    """
    target = normalize(s)
    guess = canonicalize(svd_compress(target, target_chi), 0)
    phi = list(guess.tensors)
    psi = target.tensors
    size = len(phi)
    if size == 1:
        return normalize(MPSState((psi[0],))), 1.0

    rights = [None] * size
    rights[-1] = np.ones((1, 1), dtype=complex)
    for k in range(size - 1, 0, -1):
        rights[k - 1] = _push_right_env(rights[k], phi[k], psi[k])
    lefts = [None] * size
    lefts[0] = np.ones((1, 1), dtype=complex)

    best = fidelity(guess, target)
    for sweep in range(max_sweeps):
        overlap = 0.0
        for k in range(size - 1):
            m, overlap = _fit_site(lefts[k], psi[k], rights[k])
            chi_l, d, chi_r = m.shape
            q, _ = scipy.linalg.qr(m.reshape(chi_l * d, chi_r), mode="economic")
            phi[k] = q.reshape(chi_l, d, -1)
            lefts[k + 1] = _push_left_env(lefts[k], phi[k], psi[k])
            if phi[k].shape[2] != phi[k + 1].shape[0]:
                phi[k + 1] = np.zeros((phi[k].shape[2], d, phi[k + 1].shape[2]), dtype=complex)
        for k in range(size - 1, 0, -1):
            m, overlap = _fit_site(lefts[k], psi[k], rights[k])
            chi_l, d, chi_r = m.shape
            q, _ = scipy.linalg.qr(m.reshape(chi_l, d * chi_r).T, mode="economic")
            phi[k] = q.T.reshape(-1, d, chi_r)
            rights[k - 1] = _push_right_env(rights[k], phi[k], psi[k])
            if phi[k].shape[0] != phi[k - 1].shape[2]:
                phi[k - 1] = np.zeros((phi[k - 1].shape[0], d, phi[k].shape[0]), dtype=complex)
        m, overlap = _fit_site(lefts[0], psi[0], rights[0])
        phi[0] = m / overlap
        current = float(overlap**2)
        gain = current - best
        logger.debug("Variational sweep %d: fidelity %.12f (gain %.3e)", sweep + 1, current, gain)
        best = max(best, current)
        if gain < tol:
            break

    out = MPSState(tuple(phi), canonical_center=0)
    return out, min(1.0, best)


def compress(s: MPSState, target_chi: int, method: str = "svd") -> tuple[MPSState, float]:
    """Compress to max bond ``target_chi``; returns the state and |<out|in>|^2 (both normalized)."""
    if target_chi < 1:
        msg = f"target_chi must be >= 1, got {target_chi}."
        raise ConfigurationError(msg)
    if method == "svd":
        out = svd_compress(s, target_chi)
        return out, fidelity(out, s)
    if method == "variational":
        out, _ = variational_compress(s, target_chi)
        return out, fidelity(out, s)
    msg = f"Unknown compression method '{method}', expected one of {METHODS}."
    raise ConfigurationError(msg)
