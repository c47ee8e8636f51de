"""
Open-boundary matrix product states.

Tensors have shape (chi_left, 2, chi_right); site k is qubit k and the
physical index 0 is |0> (spin up). The represented vector is
exp(norm_log) times the contraction of the tensors.
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import replace

import numpy as np
import scipy.linalg

from appCore.exceptions import DimensionError
from appCore.exceptions import SiteIndexError
from appCore.utils.validation import require_site
from appCore.utils.validation import require_unitary
from appTensor.truncation import EXACT
from appTensor.truncation import TruncationPolicy
from appTensor.truncation import truncated_svd

logger = logging.getLogger(__name__)

PHYS_DIM = 2
ISOMETRY_TOL = 1e-10

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


# ======================== MPS State =========================
@dataclass(frozen=True)
class MPSState:
    tensors: tuple
    canonical_center: int | None = None
    norm_log: float = 0.0
    truncation_error: float = 0.0

    def __post_init__(self):
        tensors = tuple(np.asarray(t, dtype=complex) for t in self.tensors)
        object.__setattr__(self, "tensors", tensors)
        if not tensors:
            msg = "An MPS needs at least one site."
            raise DimensionError(msg)
        for k, t in enumerate(tensors):
            if t.ndim != 3 or t.shape[1] != PHYS_DIM:  # noqa: PLR2004
                msg = f"Site {k} tensor has shape {t.shape}, expected (chi_l, 2, chi_r)."
                raise DimensionError(msg)
        if tensors[0].shape[0] != 1 or tensors[-1].shape[2] != 1:
            msg = "Boundary bonds must have dimension 1."
            raise DimensionError(msg)
        for k in range(len(tensors) - 1):
            if tensors[k].shape[2] != tensors[k + 1].shape[0]:
                msg = (
                    f"Bond {k}: right dimension {tensors[k].shape[2]} does not "
                    f"match left dimension {tensors[k + 1].shape[0]} of site {k + 1}."
                )
                raise DimensionError(msg)
        if self.canonical_center is not None:
            require_site(self.canonical_center, len(tensors), "canonical center")

    @property
    def length(self) -> int:
        return len(self.tensors)

    def __len__(self):
        return len(self.tensors)

    def with_tensors(self, tensors, **changes) -> "MPSState":
        return replace(self, tensors=tuple(tensors), **changes)


# ======================== Constructors =========================
def product_state(vectors) -> MPSState:
    """Product state from one length-2 amplitude vector per site (normalized per site)."""
    tensors = []
    for k, v in enumerate(vectors):
        v = np.asarray(v, dtype=complex).reshape(-1)  # noqa: PLW2901
        if v.shape != (PHYS_DIM,):
            msg = f"Site {k}: expected 2 amplitudes, got {v.shape}."
            raise DimensionError(msg)
        n = np.linalg.norm(v)
        if n == 0.0:
            msg = f"Site {k}: zero amplitude vector."
            raise DimensionError(msg)
        tensors.append((v / n).reshape(1, PHYS_DIM, 1))
    return MPSState(tuple(tensors), canonical_center=0)


def basis_state(bits) -> MPSState:
    return product_state([[1.0, 0.0] if int(b) == 0 else [0.0, 1.0] for b in bits])


def zero_state(length: int) -> MPSState:
    return basis_state([0] * length)


def neel_state(length: int) -> MPSState:
    """|up down up down ...> with the first site up."""
    return basis_state([k % 2 for k in range(length)])


def random_mps(length: int, chi: int, rng: np.random.Generator) -> MPSState:
    """Random complex MPS with bonds min(chi, 2^k, 2^(L-k)), normalized."""
    dims = [1] + [min(chi, 2**k, 2 ** (length - k)) for k in range(1, length)] + [1]
    tensors = [
        rng.normal(size=(dims[k], PHYS_DIM, dims[k + 1]))
        + 1j * rng.normal(size=(dims[k], PHYS_DIM, dims[k + 1]))
        for k in range(length)
    ]
    return normalize(MPSState(tuple(tensors)))


# ======================== Gauge kernels =========================
def _left_orthonormalize(tensors: list, k: int) -> None:
    """Make site k left-isometric and push the remainder into site k+1."""
    a = tensors[k]
    chi_l, d, chi_r = a.shape
    q, r = scipy.linalg.qr(a.reshape(chi_l * d, chi_r), mode="economic")
    tensors[k] = q.reshape(chi_l, d, -1)
    tensors[k + 1] = np.tensordot(r, tensors[k + 1], axes=(1, 0))


def _right_orthonormalize(tensors: list, k: int) -> None:
    """Make site k right-isometric and push the remainder into site k-1."""
    a = tensors[k]
    chi_l, d, chi_r = a.shape
    q, r = scipy.linalg.qr(a.reshape(chi_l, d * chi_r).T, mode="economic")
    tensors[k] = q.T.reshape(-1, d, chi_r)
    tensors[k - 1] = np.tensordot(tensors[k - 1], r.T, axes=(2, 0))


def _move_center(tensors: list, start: int | None, center: int) -> None:
    if start is None:
        for k in range(center):
            _left_orthonormalize(tensors, k)
        for k in range(len(tensors) - 1, center, -1):
            _right_orthonormalize(tensors, k)
        return
    for k in range(start, center):
        _left_orthonormalize(tensors, k)
    for k in range(start, center, -1):
        _right_orthonormalize(tensors, k)


def canonicalize(s: MPSState, center: int) -> MPSState:
    """Gauge-equivalent state with its orthogonality center at ``center``.

    The center tensor is normalized and its norm moved into ``norm_log``.
    """
    require_site(center, s.length, "center")
    tensors = list(s.tensors)
    _move_center(tensors, s.canonical_center, center)
    n = np.linalg.norm(tensors[center])
    norm_log = s.norm_log
    if n > 0.0:
        tensors[center] = tensors[center] / n
        norm_log += math.log(n)
    return s.with_tensors(tensors, canonical_center=center, norm_log=norm_log)


def normalize(s: MPSState) -> MPSState:
    center = 0 if s.canonical_center is None else s.canonical_center
    return replace(canonicalize(s, center), norm_log=0.0)


def isometry_residuals(s: MPSState) -> list[float]:
    """Per-site deviation from the isometry condition implied by the center (0 at the center)."""
    if s.canonical_center is None:
        msg = "State has no canonical center."
        raise SiteIndexError(msg)
    residuals = []
    for k, a in enumerate(s.tensors):
        chi_l, d, chi_r = a.shape
        if k < s.canonical_center:
            m = a.reshape(chi_l * d, chi_r)
            residuals.append(float(np.linalg.norm(m.conj().T @ m - np.eye(chi_r))))
        elif k > s.canonical_center:
            m = a.reshape(chi_l, d * chi_r)
            residuals.append(float(np.linalg.norm(m @ m.conj().T - np.eye(chi_l))))
        else:
            residuals.append(0.0)
    return residuals


def bond_dimensions(s: MPSState) -> list[int]:
    """Internal bond dimensions chi_1..chi_{L-1}."""
    return [t.shape[2] for t in s.tensors[:-1]]


def max_bond(s: MPSState) -> int:
    return max([1, *bond_dimensions(s)])


# ======================== Overlaps =========================
def _check_lengths(a: MPSState, b: MPSState) -> None:
    if a.length != b.length:
        msg = f"Length mismatch: {a.length} vs {b.length} sites."
        raise DimensionError(msg)


def inner_product(a: MPSState, b: MPSState) -> complex:
    """<a|b> by a left-to-right transfer contraction."""
    _check_lengths(a, b)
    env = np.ones((1, 1), dtype=complex)
    for ta, tb in zip(a.tensors, b.tensors, strict=True):
        env = np.tensordot(env, tb, axes=(1, 0))
        env = np.tensordot(ta.conj(), env, axes=([0, 1], [0, 1]))
    return complex(env[0, 0] * math.exp(a.norm_log + b.norm_log))


def log_overlap(a: MPSState, b: MPSState) -> float:
    """Natural log of |<a|b>|, rescaling the transfer environment at each site."""
    _check_lengths(a, b)
    env = np.ones((1, 1), dtype=complex)
    acc = a.norm_log + b.norm_log
    for ta, tb in zip(a.tensors, b.tensors, strict=True):
        env = np.tensordot(env, tb, axes=(1, 0))
        env = np.tensordot(ta.conj(), env, axes=([0, 1], [0, 1]))
        scale = np.max(np.abs(env))
        if scale == 0.0:
            return -math.inf
        env = env / scale
        acc += math.log(scale)
    return acc + math.log(abs(env[0, 0])) if env[0, 0] != 0 else -math.inf


def log_norm(s: MPSState) -> float:
    return log_overlap(s, s) / 2.0


def log10_fidelity(a: MPSState, b: MPSState) -> float:
    """log10 of |<a|b>|^2 / (<a|a><b|b>), finite even when the fidelity underflows."""
    lo = log_overlap(a, b)
    if lo == -math.inf:
        return -math.inf
    return (2.0 * (lo - log_norm(a) - log_norm(b))) / math.log(10.0)


def fidelity(a: MPSState, b: MPSState) -> float:
    """|<a|b>|^2 / (<a|a><b|b>); 0.0 when it underflows (see log10_fidelity)."""
    lf = log10_fidelity(a, b)
    if lf < -300.0:  # noqa: PLR2004
        return 0.0
    return min(1.0, 10.0**lf)


# ======================== Gates =========================
def apply_single_site_gate(s: MPSState, k: int, u) -> MPSState:
    """Exact one-qubit gate; the canonical center is preserved."""
    require_site(k, s.length)
    u = require_unitary(u, PHYS_DIM)
    tensors = list(s.tensors)
    tensors[k] = np.einsum("ts,asb->atb", u, tensors[k])
    return s.with_tensors(tensors)


def _center_for_window(s: MPSState, first: int, last: int) -> int:
    c = s.canonical_center
    if c is None or c <= first:
        return first
    if c >= last:
        return last
    return c


def apply_two_site_gate(
    s: MPSState,
    k: int,
    u,
    policy: TruncationPolicy = EXACT,
) -> MPSState:
    """
    Apply a 4x4 unitary to sites (k, k+1).

    Matrix indices are 2*b_k + b_{k+1}. The singular values end up on the
    side facing the previous canonical center.
    """
    if not 0 <= k < s.length - 1:
        msg = f"Two-site gate at {k} does not fit a chain of length {s.length}."
        raise SiteIndexError(msg)
    u = require_unitary(u, PHYS_DIM**2)
    came_from_right = s.canonical_center is not None and s.canonical_center > k
    tensors = list(s.tensors)
    center = _center_for_window(s, k, k + 1)
    _move_center(tensors, s.canonical_center, center)

    theta = np.tensordot(tensors[k], tensors[k + 1], axes=(2, 0))
    chi_l, chi_r = theta.shape[0], theta.shape[3]
    gate = u.reshape(PHYS_DIM, PHYS_DIM, PHYS_DIM, PHYS_DIM)
    theta = np.tensordot(gate, theta, axes=([2, 3], [1, 2])).transpose(2, 0, 1, 3)
    left, svals, right, discarded = truncated_svd(
        theta.reshape(chi_l * PHYS_DIM, PHYS_DIM * chi_r),
        policy,
    )
    if came_from_right:
        tensors[k] = (left * svals).reshape(chi_l, PHYS_DIM, -1)
        tensors[k + 1] = right.reshape(-1, PHYS_DIM, chi_r)
        new_center = k
    else:
        tensors[k] = left.reshape(chi_l, PHYS_DIM, -1)
        tensors[k + 1] = (svals[:, None] * right).reshape(-1, PHYS_DIM, chi_r)
        new_center = k + 1
    if discarded > 0.0:
        logger.debug("Bond %d truncated to %d, discarded weight %.3e", k, svals.size, discarded)
    return s.with_tensors(
        tensors,
        canonical_center=new_center,
        truncation_error=s.truncation_error + discarded,
    )


def _permute_to_sorted(qubits, u: np.ndarray) -> tuple[list[int], np.ndarray]:
    n = len(qubits)
    order = list(np.argsort(qubits))
    if order == list(range(n)):
        return list(qubits), u
    tensor = u.reshape((PHYS_DIM,) * (2 * n))
    tensor = tensor.transpose(order + [n + p for p in order])
    return sorted(qubits), tensor.reshape(PHYS_DIM**n, PHYS_DIM**n)


def apply_gate(
    s: MPSState,
    qubits,
    u,
    policy: TruncationPolicy = EXACT,
) -> MPSState:
    """
    Apply a unitary on contiguous sites.

    ``u`` uses big-endian indexing in the order ``qubits`` is given, so the
    first listed qubit is the most significant bit of the gate index.
    """
    qubits = [int(q) for q in qubits]
    for q in qubits:
        require_site(q, s.length, "qubit")
    if len(set(qubits)) != len(qubits):
        msg = f"Repeated qubit in {qubits}."
        raise SiteIndexError(msg)
    n = len(qubits)
    u = require_unitary(u, PHYS_DIM**n)
    if n == 1:
        return apply_single_site_gate(s, qubits[0], u)
    sites, u = _permute_to_sorted(qubits, u)
    if sites[-1] - sites[0] != n - 1:
        if n == 2:  # noqa: PLR2004
            return apply_long_range_gate(s, sites, u, policy)
        msg = f"Multi-qubit gate on {qubits} must act on contiguous sites."
        raise SiteIndexError(msg)
    if n == 2:  # noqa: PLR2004
        return apply_two_site_gate(s, sites[0], u, policy)

    first, last = sites[0], sites[-1]
    tensors = list(s.tensors)
    _move_center(tensors, s.canonical_center, _center_for_window(s, first, last))
    theta = tensors[first]
    for k in range(first + 1, last + 1):
        theta = np.tensordot(theta, tensors[k], axes=(theta.ndim - 1, 0))
    chi_l, chi_r = theta.shape[0], theta.shape[-1]
    gate = u.reshape((PHYS_DIM,) * (2 * n))
    theta = np.tensordot(gate, theta, axes=(list(range(n, 2 * n)), list(range(1, n + 1))))
    theta = np.moveaxis(theta, n, 0)  # (chi_l, s_1..s_n, chi_r)

    discarded_total = 0.0
    left_dim = chi_l
    rest = theta.reshape(chi_l * PHYS_DIM, -1)
    for k in range(first, last):
        left, svals, right, discarded = truncated_svd(rest, policy)
        discarded_total += discarded
        tensors[k] = left.reshape(left_dim, PHYS_DIM, -1)
        left_dim = svals.size
        rest = (svals[:, None] * right).reshape(left_dim * PHYS_DIM, -1)
    tensors[last] = rest.reshape(left_dim, PHYS_DIM, chi_r)
    return s.with_tensors(
        tensors,
        canonical_center=last,
        truncation_error=s.truncation_error + discarded_total,
    )


def apply_long_range_gate(
    s: MPSState,
    qubits,
    u,
    policy: TruncationPolicy = EXACT,
) -> MPSState:
    """Two-qubit gate on non-adjacent sites through a nearest-neighbour SWAP chain."""
    i, j = (int(q) for q in qubits)
    lo, hi = min(i, j), max(i, j)
    if hi - lo == 1:
        return apply_gate(s, (i, j), u, policy)
    state = s
    for k in range(lo, hi - 1):
        state = apply_two_site_gate(state, k, SWAP, policy)
    moved = [hi - 1 if q == lo else q for q in (i, j)]
    state = apply_gate(state, moved, u, policy)
    for k in range(hi - 2, lo - 1, -1):
        state = apply_two_site_gate(state, k, SWAP, policy)
    return state


# ======================== Spectra =========================
def schmidt_values(s: MPSState, bond: int) -> np.ndarray:
    """Normalized Schmidt coefficients across the cut between sites bond and bond+1."""
    if not 0 <= bond < s.length - 1:
        msg = f"Bond {bond} does not exist in a chain of length {s.length}."
        raise SiteIndexError(msg)
    c = canonicalize(s, bond)
    a = c.tensors[bond]
    svals = scipy.linalg.svdvals(a.reshape(-1, a.shape[2]))
    return svals / np.linalg.norm(svals)
