"""Two-site DMRG with a density-matrix mixer."""

import logging
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from appCore.exceptions import EigensolverError
from appSpin.observables import spin_flip
from appSpin.observables import staggered_magnetization
from appSpin.params import DmrgConfig
from appSpin.params import XXZParams
from appSpin.xxz import xxz_mpo
from appTensor.mpo import MPOOperator
from appTensor.mps import MPSState
from appTensor.mps import canonicalize
from appTensor.mps import max_bond
from appTensor.mps import neel_state
from appTensor.observables import mpo_left_update
from appTensor.observables import mpo_right_update
from appTensor.truncation import TruncationPolicy
from appTensor.truncation import truncated_svd

logger = logging.getLogger(__name__)

DENSE_SOLVE_MAX = 256


@dataclass(frozen=True)
class DmrgResult:
    state: MPSState
    energy: float
    max_chi: int
    delta_energy: float
    truncation_error: float
    sweeps: int
    converged: bool
    energies: list = field(default_factory=list)

    def stats(self) -> dict:
        return {
            "energy": self.energy,
            "max_chi": self.max_chi,
            "delta_energy": self.delta_energy,
            "truncation_error": self.truncation_error,
            "sweeps": self.sweeps,
            "converged": self.converged,
        }


def _apply_heff(theta, left, w1, w2, right):
    x = np.tensordot(left, theta, axes=([2], [0]))
    x = np.tensordot(x, w1, axes=([1, 2], [0, 2]))
    x = np.tensordot(x, w2, axes=([1, 4], [2, 0]))
    return np.tensordot(x, right, axes=([1, 4], [2, 1]))


def _lowest_eigenpair(theta, left, w1, w2, right) -> tuple[float, np.ndarray]:
    shape = (left.shape[0], w1.shape[1], w2.shape[1], right.shape[0])
    dim = int(np.prod(shape))

    def matvec(v):
        return _apply_heff(v.reshape(shape), left, w1, w2, right).reshape(-1)

    if dim <= DENSE_SOLVE_MAX:
        h = np.column_stack([matvec(col) for col in np.eye(dim, dtype=complex)])
        energies, vectors = scipy.linalg.eigh(0.5 * (h + h.conj().T))
        return float(energies[0]), vectors[:, 0].reshape(shape)
    op = scipy.sparse.linalg.LinearOperator((dim, dim), matvec=matvec, dtype=complex)
    try:
        energies, vectors = scipy.sparse.linalg.eigsh(op, k=1, which="SA", v0=theta.reshape(-1))
    except (scipy.sparse.linalg.ArpackNoConvergence, scipy.sparse.linalg.ArpackError) as e:
        msg = f"Local eigensolve of dimension {dim} failed: {e}"
        raise EigensolverError(msg) from e
    return float(energies[0]), vectors[:, 0].reshape(shape)


def _truncated_eigh(rho, policy: TruncationPolicy):
    """Kept eigenvectors of a density matrix, largest weight first."""
    weights, vectors = scipy.linalg.eigh(0.5 * (rho + rho.conj().T))
    order = np.argsort(weights)[::-1]
    weights, vectors = np.clip(weights[order], 0.0, None), vectors[:, order]
    keep, _ = policy.keep_count(np.sqrt(weights))
    return vectors[:, :keep]


def _split_right_move(theta, left, w1, policy, alpha):
    """Left-isometric A_k and center A_{k+1}; returns (a, b, discarded)."""
    chi_l, _, _, chi_r = theta.shape
    m = theta.reshape(chi_l * 2, 2 * chi_r)
    if alpha <= 0.0:
        u, svals, vh, discarded = truncated_svd(m, policy)
        return u.reshape(chi_l, 2, -1), (svals[:, None] * vh).reshape(-1, 2, chi_r), discarded
    p = np.tensordot(left, theta, axes=([2], [0]))
    p = np.tensordot(p, w1, axes=([1, 2], [0, 2]))  # (a', s2, b, s1', w')
    p = p.transpose(0, 3, 4, 1, 2).reshape(chi_l * 2, -1)
    rho = m @ m.conj().T + alpha * (p @ p.conj().T) / max(np.vdot(p, p).real, 1e-300)
    a = _truncated_eigh(rho, policy)
    b = a.conj().T @ m
    discarded = max(0.0, 1.0 - np.vdot(b, b).real / np.vdot(m, m).real)
    b = b * (np.linalg.norm(m) / np.linalg.norm(b))
    return a.reshape(chi_l, 2, -1), b.reshape(-1, 2, chi_r), discarded


def _split_left_move(theta, w2, right, policy, alpha):
    """Center A_k and right-isometric A_{k+1}; returns (a, b, discarded)."""
    chi_l, _, _, chi_r = theta.shape
    m = theta.reshape(chi_l * 2, 2 * chi_r)
    if alpha <= 0.0:
        u, svals, vh, discarded = truncated_svd(m, policy)
        return (u * svals).reshape(chi_l, 2, -1), vh.reshape(-1, 2, chi_r), discarded
    q = np.tensordot(theta, w2, axes=([2], [2]))  # (a, s1, b, w', s2', w'')
    q = np.tensordot(q, right, axes=([2, 5], [2, 1]))  # (a, s1, w', s2', b')
    q = q.reshape(-1, 2 * chi_r)
    rho = m.conj().T @ m + alpha * (q.conj().T @ q) / max(np.vdot(q, q).real, 1e-300)
    v = _truncated_eigh(rho, policy)
    b = v.conj().T
    a = m @ v
    discarded = max(0.0, 1.0 - np.vdot(a, a).real / np.vdot(m, m).real)
    a = a * (np.linalg.norm(m) / np.linalg.norm(a))
    return a.reshape(chi_l, 2, -1), b.reshape(-1, 2, chi_r), discarded


def _mixer_amplitude(cfg: DmrgConfig, sweep: int) -> float:
    if not cfg.mixer or sweep >= max(1, cfg.max_sweeps // 2):
        return 0.0
    return cfg.mixer_amplitude / cfg.mixer_decay**sweep


def dmrg(h: MPOOperator, cfg: DmrgConfig | None = None, initial: MPSState | None = None) -> DmrgResult:
    """
    Ground state of ``h`` by two-site sweeps from ``initial`` (default: Neel).

    Stops when a full sweep without mixer changes the energy by less than
    ``cfg.energy_tol`` or after ``cfg.max_sweeps`` sweeps.
    """
    cfg = cfg or DmrgConfig()
    size = h.length
    policy = TruncationPolicy.from_cutoff(cfg.truncation_cutoff, max_bond=cfg.max_bond)
    state = canonicalize(initial if initial is not None else neel_state(size), 0)
    tensors = list(state.tensors)
    ws = h.tensors

    rights = [None] * size
    rights[-1] = np.ones((1, 1, 1), dtype=complex)
    for k in range(size - 1, 0, -1):
        rights[k - 1] = mpo_right_update(rights[k], tensors[k], ws[k])
    lefts = [None] * size
    lefts[0] = np.ones((1, 1, 1), dtype=complex)

    energies: list[float] = []
    energy = np.nan
    delta = np.inf
    sweep_trunc = 0.0
    converged = False
    sweeps = 0
    for sweep in range(cfg.max_sweeps):
        alpha = _mixer_amplitude(cfg, sweep)
        sweep_trunc = 0.0
        for k in range(size - 1):
            theta = np.tensordot(tensors[k], tensors[k + 1], axes=(2, 0))
            energy, theta = _lowest_eigenpair(theta, lefts[k], ws[k], ws[k + 1], rights[k + 1])
            a, b, disc = _split_right_move(theta, lefts[k], ws[k], policy, alpha)
            tensors[k], tensors[k + 1] = a, b
            sweep_trunc = max(sweep_trunc, disc)
            lefts[k + 1] = mpo_left_update(lefts[k], a, ws[k])
        for k in range(size - 2, -1, -1):
            theta = np.tensordot(tensors[k], tensors[k + 1], axes=(2, 0))
            energy, theta = _lowest_eigenpair(theta, lefts[k], ws[k], ws[k + 1], rights[k + 1])
            a, b, disc = _split_left_move(theta, ws[k + 1], rights[k + 1], policy, alpha)
            tensors[k], tensors[k + 1] = a, b
            sweep_trunc = max(sweep_trunc, disc)
            rights[k] = mpo_right_update(rights[k + 1], b, ws[k + 1])
        sweeps = sweep + 1
        delta = energy - energies[-1] if energies else np.inf
        energies.append(energy)
        chi = max(t.shape[2] for t in tensors)
        logger.info(
            "DMRG sweep %d: E=%.12f dE=%.2e chi=%d trunc=%.2e mixer=%.1e",
            sweeps,
            energy,
            delta,
            chi,
            sweep_trunc,
            alpha,
        )
        if alpha == 0.0 and abs(delta) < cfg.energy_tol:
            converged = True
            break

    result_state = canonicalize(MPSState(tuple(tensors), canonical_center=0), 0)
    if not converged:
        logger.warning("DMRG stopped after %d sweeps with dE=%.2e", sweeps, delta)
    return DmrgResult(
        state=result_state,
        energy=float(energy),
        max_chi=max_bond(result_state),
        delta_energy=float(abs(delta)),
        truncation_error=float(sweep_trunc),
        sweeps=sweeps,
        converged=converged,
        energies=energies,
    )


def xxz_ground_state(
    p: XXZParams,
    cfg: DmrgConfig | None = None,
    initial: MPSState | None = None,
) -> DmrgResult:
    """DMRG ground state with the symmetry-broken branch chosen so that SM <= 0."""
    result = dmrg(xxz_mpo(p), cfg, initial)
    if staggered_magnetization(result.state) > 0.0:
        logger.info("Flipping all spins to select the negative staggered-magnetization branch")
        result = replace(result, state=spin_flip(result.state))
    return result
