"""
Exact sequential preparation of an MPS by a staircase of q-qubit unitaries.

Gate k acts on qubits k..k+m with m = ceil(log2 chi). Before it, qubits
k..k+m-1 hold the bond index and qubit k+m is still |0>; afterwards qubit k
carries the physical index and qubits k+1..k+m the next bond index:

    U[s * 2^m + b, 2 a] = B_k[a, s, b]

with B_k the right-canonical site tensors. The remaining m sites are folded
into the last gate.
"""

import logging
import math

import numpy as np
import scipy.linalg

from appCircuit.circuit import Circuit
from appCircuit.gates import Gate
from appCircuit.gates import u1
from appCircuit.gates import u2
from appCircuit.gates import un
from appTensor.mps import MPSState
from appTensor.mps import canonicalize
from appTensor.mps import max_bond
from appTensor.mps import normalize

logger = logging.getLogger(__name__)


def bond_qubits(chi: int) -> int:
    return math.ceil(math.log2(chi)) if chi > 1 else 0


def complete_unitary(columns: np.ndarray) -> np.ndarray:
    """
    Unitary whose first r columns are the orthonormal ``columns`` (d x r).

    The rest come from a QR of [columns | I] with a positive R diagonal.
    """
    d, r = columns.shape
    q, rr = scipy.linalg.qr(np.hstack([columns, np.eye(d, dtype=complex)]), mode="economic")
    phases = np.diag(rr)[:d]
    phases = np.where(np.abs(phases) > 1e-14, phases / np.abs(phases), 1.0)  # noqa: PLR2004
    q = q[:, :d] * phases
    q[:, :r] = columns
    return q


def _embed_site(b: np.ndarray, m: int) -> np.ndarray:
    """Isometry columns 2a of the site unitary, completed to a 2^(m+1) unitary."""
    chi_l, _, chi_r = b.shape
    dim = 2 ** (m + 1)
    iso = np.zeros((2, 2**m, chi_l), dtype=complex)
    iso[:, :chi_r, :] = b.transpose(1, 2, 0)
    iso = iso.reshape(dim, chi_l)
    full = complete_unitary(iso)
    u = np.empty((dim, dim), dtype=complex)
    even = list(range(0, dim, 2))
    rest = [c for c in range(dim) if c not in even[:chi_l]]
    u[:, even[:chi_l]] = full[:, :chi_l]
    u[:, rest] = full[:, chi_l:]
    return u


def _tail_unitary(tensors, m: int) -> np.ndarray:
    """Unitary on the last m sites mapping |b> to the state the bond b generates."""
    block = tensors[0]
    for t in tensors[1:]:
        block = np.tensordot(block, t, axes=(block.ndim - 1, 0))
    chi = block.shape[0]
    cols = block.reshape(chi, 2**m).T
    return complete_unitary(cols)


def _site_gate(qubits: list[int], matrix: np.ndarray, *, from_zero: bool) -> Gate:
    if len(qubits) == 1:
        return u1(qubits[0], matrix)
    if len(qubits) == 2:  # noqa: PLR2004
        return u2(qubits[0], qubits[1], matrix, from_zero=from_zero)
    return un(qubits, matrix)


def staircase_gates(target: MPSState, m: int | None = None) -> list[Gate]:
    """
    Staircase preparing ``target`` exactly from |0...0>.

    ``m`` is the number of bond qubits; it must satisfy 2^m >= max bond.
    """
    state = normalize(canonicalize(target, 0))
    size = state.length
    m = bond_qubits(max_bond(state)) if m is None else m
    tensors = list(state.tensors)
    last = size - 1 - m
    if last < 0:
        # Chain shorter than the bond register: one gate prepares everything.
        return [_site_gate(list(range(size)), _tail_unitary(tensors, size), from_zero=False)]

    gates = []
    for k in range(last + 1):
        u = _embed_site(tensors[k], m)
        if k == last and m > 0:
            u = np.kron(np.eye(2), _tail_unitary(tensors[k + 1 :], m)) @ u
        gates.append(_site_gate(list(range(k, k + m + 1)), u, from_zero=m == 1))
    return gates


def schon_prepare(target: MPSState) -> Circuit:
    """Exact preparation with ceil(log2 chi)+1 qubit unitaries in staircase order."""
    gates = staircase_gates(target)
    width = max((g.n_qubits for g in gates), default=1)
    logger.info("Schon staircase: %d gates on %d qubits each", len(gates), width)
    return Circuit(target.length, tuple(gates))
