"""
Dense statevector reference for small systems.

Vectors are little-endian: amplitude index = sum_k b_k 2^k, so qubit 0 is the
least significant bit. ``mps_to_dense`` / ``dense_to_mps`` are the only places
where this ordering meets the MPS site order.
"""

import logging
import math

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from django.conf import settings

from appCore.exceptions import DimensionError
from appCore.exceptions import OracleCapacityError
from appCore.exceptions import SiteIndexError
from appTensor.mps import MPSState
from appTensor.mps import normalize
from appTensor.truncation import EXACT
from appTensor.truncation import TruncationPolicy
from appTensor.truncation import truncated_svd

logger = logging.getLogger(__name__)

SZ = np.diag([0.5, -0.5]).astype(complex)
SP = np.array([[0, 1], [0, 0]], dtype=complex)
SM = SP.T.copy()
DENSE_EIGH_MAX = 10


def max_qubits() -> int:
    return int(settings.MPSC["ORACLE_MAX_QUBITS"])


def require_capacity(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        msg = f"Dense reference limited to {cap} qubits, {n} requested."
        raise OracleCapacityError(msg)


# ======================== MPS Boundary =========================
def mps_to_dense(s: MPSState) -> np.ndarray:
    require_capacity(s.length)
    psi = s.tensors[0]
    for t in s.tensors[1:]:
        psi = np.tensordot(psi, t, axes=(psi.ndim - 1, 0))
    # C-order reshape makes site 0 the most significant bit; reverse to little-endian.
    psi = psi.reshape((2,) * s.length).transpose(tuple(range(s.length - 1, -1, -1)))
    return psi.reshape(-1) * math.exp(s.norm_log)


def dense_to_mps(vec, policy: TruncationPolicy = EXACT) -> MPSState:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    n = int(round(math.log2(vec.size)))
    if 2**n != vec.size:
        msg = f"Vector length {vec.size} is not a power of two."
        raise DimensionError(msg)
    require_capacity(n)
    rest = vec.reshape((2,) * n).transpose(tuple(range(n - 1, -1, -1))).reshape(1, -1)
    tensors = []
    left_dim = 1
    for _ in range(n - 1):
        rest = rest.reshape(left_dim * 2, -1)
        u, svals, vh, _ = truncated_svd(rest, policy)
        tensors.append(u.reshape(left_dim, 2, -1))
        left_dim = svals.size
        rest = svals[:, None] * vh
    tensors.append(rest.reshape(left_dim, 2, 1))
    return normalize(MPSState(tuple(tensors), canonical_center=n - 1))


# ======================== Circuits =========================
def dense_apply_gate(vec: np.ndarray, qubits, u, n: int) -> np.ndarray:
    """Apply a big-endian gate matrix on ``qubits`` to a little-endian vector."""
    m = len(qubits)
    psi = np.asarray(vec, dtype=complex).reshape((2,) * n)
    axes = [n - 1 - q for q in qubits]
    gate = np.asarray(u, dtype=complex).reshape((2,) * (2 * m))
    psi = np.tensordot(gate, psi, axes=(list(range(m, 2 * m)), axes))
    psi = np.moveaxis(psi, list(range(m)), axes)
    return psi.reshape(-1)


def dense_simulate(c, init=None) -> np.ndarray:
    """Statevector of ``c`` applied to ``init`` (vector), its attached MPS, or |0...0>."""
    n = c.n_qubits
    require_capacity(n)
    if init is not None:
        vec = np.asarray(init, dtype=complex).reshape(-1)
    elif getattr(c, "initial_state", None) is not None:
        vec = mps_to_dense(c.initial_state)
    else:
        vec = np.zeros(2**n, dtype=complex)
        vec[0] = 1.0
    for g in c.gates:
        vec = dense_apply_gate(vec, g.qubits, g.unitary(), n)
    return vec


def circuit_unitary(c) -> np.ndarray:
    n = c.n_qubits
    require_capacity(n)
    dim = 2**n
    columns = np.eye(dim, dtype=complex)
    out = np.empty((dim, dim), dtype=complex)
    for k in range(dim):
        vec = columns[:, k]
        for g in c.gates:
            vec = dense_apply_gate(vec, g.qubits, g.unitary(), n)
        out[:, k] = vec
    return out


# ======================== Observables =========================
def site_operator(op, k: int, n: int):
    """Sparse op acting on qubit k of n (little-endian Kronecker order)."""
    if not 0 <= k < n:
        msg = f"Site {k} outside {n} qubits."
        raise SiteIndexError(msg)
    return scipy.sparse.kron(
        scipy.sparse.identity(2 ** (n - 1 - k), format="csr"),
        scipy.sparse.kron(scipy.sparse.csr_matrix(op), scipy.sparse.identity(2**k, format="csr")),
        format="csr",
    )


def dense_expectation(vec: np.ndarray, op, k: int, n: int) -> complex:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    return complex(np.vdot(vec, site_operator(op, k, n) @ vec) / np.vdot(vec, vec))


def dense_expectation_sz(vec: np.ndarray, k: int, n: int) -> float:
    return dense_expectation(vec, SZ, k, n).real


def dense_correlation(vec: np.ndarray, i: int, j: int, n: int) -> float:
    if i == j:
        msg = f"C_zz({i}, {j}) is undefined on the diagonal."
        raise SiteIndexError(msg)
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    norm2 = np.vdot(vec, vec).real
    zz = np.vdot(vec, site_operator(SZ, i, n) @ (site_operator(SZ, j, n) @ vec)).real / norm2
    return zz - dense_expectation_sz(vec, i, n) * dense_expectation_sz(vec, j, n)


# ======================== XXZ Hamiltonian =========================
def xxz_dense_hamiltonian(params):
    """Sparse XXZ Hamiltonian: Sx Sx + Sy Sy = (S+ S- + S- S+) / 2 on every bond."""
    n = params.length
    require_capacity(n)
    dim = 2**n
    h = scipy.sparse.csr_matrix((dim, dim), dtype=complex)
    for i in range(n - 1):
        h = h + 0.5 * (site_operator(SP, i, n) @ site_operator(SM, i + 1, n))
        h = h + 0.5 * (site_operator(SM, i, n) @ site_operator(SP, i + 1, n))
        h = h + params.jz * (site_operator(SZ, i, n) @ site_operator(SZ, i + 1, n))
    for i in range(n):
        h = h - params.hz * site_operator(SZ, i, n)
    return h.tocsr()


def mpo_to_dense(h) -> np.ndarray:
    """Dense matrix of an MPO in little-endian order."""
    n = h.length
    require_capacity(n)
    op = h.tensors[0]
    for w in h.tensors[1:]:
        # op: (1, out..., in..., D); contract bond with w (D, s, t, D')
        op = np.tensordot(op, w, axes=(op.ndim - 1, 0))
    op = op.reshape(op.shape[1:-1])
    # op axes are (o_0, i_0, o_1, i_1, ...); gather outputs then inputs, site L-1 first.
    outs = [2 * k for k in range(n - 1, -1, -1)]
    ins = [2 * k + 1 for k in range(n - 1, -1, -1)]
    return op.transpose(outs + ins).reshape(2**n, 2**n)


def dense_ground_state(params) -> tuple[float, np.ndarray]:
    h = xxz_dense_hamiltonian(params)
    if params.length <= DENSE_EIGH_MAX:
        energies, vectors = scipy.linalg.eigh(h.toarray())
        return float(energies[0]), vectors[:, 0]
    energies, vectors = scipy.sparse.linalg.eigsh(h, k=1, which="SA")
    return float(energies[0]), vectors[:, 0]


def dense_evolve(psi, params, t: float) -> np.ndarray:
    """exp(-i H t) psi through the eigendecomposition of H."""
    h = xxz_dense_hamiltonian(params).toarray()
    energies, vectors = scipy.linalg.eigh(h)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return vectors @ (np.exp(-1j * energies * t) * (vectors.conj().T @ psi))
