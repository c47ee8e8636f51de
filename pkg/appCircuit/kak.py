"""
Cartan (KAK) decomposition of two-qubit unitaries.

    U = exp(i phase) (A0 x A1) exp(i (a XX + b YY + c ZZ)) (B0 x B1)

with the interaction coefficients in the Weyl chamber pi/4 >= a >= b >= |c|.
"""

import logging
from dataclasses import dataclass

import numpy as np

from appCore.utils.validation import require_unitary
from appCircuit.su4 import I2
from appCircuit.su4 import MAGIC
from appCircuit.su4 import XX
from appCircuit.su4 import YY
from appCircuit.su4 import ZZ
from appCircuit.su4 import X
from appCircuit.su4 import Y
from appCircuit.su4 import Z
from appCircuit.su4 import interaction
from appCircuit.su4 import rx
from appCircuit.su4 import ry
from appCircuit.su4 import rz
from appCircuit.su4 import zyz_angles

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-9
QUARTER = np.pi / 4
_PAULI_PAIRS = (XX, YY, ZZ)
# Conjugating by these flips the sign of two coefficients: (a, b), (b, c), (a, c).
_FLIPS = {
    (0, 1): np.kron(Z, I2),
    (1, 2): np.kron(X, I2),
    (0, 2): np.kron(Y, I2),
}
# Conjugating by these exchanges two coefficients.
_SWAPS = {
    (0, 1): np.kron(rz(np.pi / 2), rz(np.pi / 2)),
    (1, 2): np.kron(rx(np.pi / 2), rx(np.pi / 2)),
    (0, 2): np.kron(ry(np.pi / 2), ry(np.pi / 2)),
}


@dataclass(frozen=True)
class TwoQubitDecomposition:
    cnot_cost: int
    coefficients: tuple[float, float, float]
    post: tuple[np.ndarray, np.ndarray]
    pre: tuple[np.ndarray, np.ndarray]
    global_phase: float

    def rebuild(self) -> np.ndarray:
        return (
            np.exp(1j * self.global_phase)
            * np.kron(*self.post)
            @ interaction(*self.coefficients)
            @ np.kron(*self.pre)
        )

    def su4_params(self) -> tuple[np.ndarray, float]:
        """Fifteen SU4 parameters and the leftover global phase."""
        phase = self.global_phase
        angles = []
        for local in (*self.post, None, *self.pre):
            if local is None:
                angles.extend(self.coefficients)
                continue
            ph, a, b, c = zyz_angles(local)
            phase += ph
            angles.extend((a, b, c))
        return np.array(angles), float(phase)


def cnot_cost_from_coefficients(coefficients, tol: float = ZERO_TOL) -> int:
    a, b, c = coefficients
    if abs(a) < tol and abs(b) < tol and abs(c) < tol:
        return 0
    if abs(a - QUARTER) < tol and abs(b) < tol and abs(c) < tol:
        return 1
    if abs(c) < tol:
        return 2
    return 3


def _real_diagonalizer(m: np.ndarray, rng: np.random.Generator, attempts: int = 100) -> np.ndarray:
    """Real orthogonal P with P^T m P diagonal, for a complex symmetric normal m."""
    re, im = m.real, m.imag
    for _ in range(attempts):
        x = rng.uniform(-1.0, 1.0)
        _, p = np.linalg.eigh(x * re + (1.0 - abs(x)) * im)
        d = p.T @ m @ p
        if np.linalg.norm(d - np.diag(np.diag(d))) < 1e-10:  # noqa: PLR2004
            return p
    msg = "Failed to diagonalize the magic-basis Gram matrix."
    raise ArithmeticError(msg)


def _factor_local(k: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Split a 4x4 product operator into exp(i phase) (A x B) with A, B in SU(2)."""
    t = k.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    u, s, vh = np.linalg.svd(t)
    a = u[:, 0].reshape(2, 2) * np.sqrt(s[0])
    b = vh[0, :].reshape(2, 2) * np.sqrt(s[0])
    a = a / np.sqrt(np.linalg.det(a))
    b = b / np.sqrt(np.linalg.det(b))
    rebuilt = np.kron(a, b)
    idx = np.unravel_index(np.argmax(np.abs(rebuilt)), rebuilt.shape)
    return float(np.angle(k[idx] / rebuilt[idx])), a, b


class _Canonicalizer:
    """Mutable (coefficients, K1, K2) triple moved into the Weyl chamber."""

    def __init__(self, coefficients, k1, k2):
        self.c = list(coefficients)
        self.k1 = k1
        self.k2 = k2

    def shift(self, i: int, steps: int) -> None:
        # exp(i pi/2 PP) = i PP
        step = (1j if steps > 0 else -1j) * _PAULI_PAIRS[i]
        for _ in range(abs(steps)):
            self.k2 = step @ self.k2
        self.c[i] -= steps * np.pi / 2

    def flip(self, i: int, j: int) -> None:
        local = _FLIPS[(i, j)]
        self.k1 = self.k1 @ local
        self.k2 = local @ self.k2
        self.c[i], self.c[j] = -self.c[i], -self.c[j]

    def swap(self, i: int, j: int) -> None:
        r = _SWAPS[(min(i, j), max(i, j))]
        self.k1 = self.k1 @ r
        self.k2 = r.conj().T @ self.k2
        self.c[i], self.c[j] = self.c[j], self.c[i]

    def run(self, tol: float) -> None:
        for i in range(3):
            self.shift(i, round(self.c[i] / (np.pi / 2)))
        for _ in range(2):
            for i in range(2):
                if abs(self.c[i]) < abs(self.c[i + 1]) - tol:
                    self.swap(i, i + 1)
        if self.c[0] < 0:
            self.flip(0, 2)
        if self.c[1] < 0:
            self.flip(1, 2)
        if abs(self.c[0] - QUARTER) < tol and self.c[2] < 0:
            self.shift(0, 1)
            self.flip(0, 2)


def kak_decompose(u, seed: int = 0, tol: float = ZERO_TOL) -> TwoQubitDecomposition:
    u = require_unitary(u, 4)
    phase = np.angle(np.linalg.det(u)) / 4
    su = u * np.exp(-1j * phase)
    um = MAGIC.conj().T @ su @ MAGIC
    p = _real_diagonalizer(um.T @ um, np.random.default_rng(seed))
    if np.linalg.det(p) < 0:
        p[:, 0] = -p[:, 0]
    d = np.diag(p.T @ um.T @ um @ p)
    theta = np.angle(d) / 2
    o1 = um @ p @ np.diag(np.exp(-1j * theta))
    if np.linalg.det(o1.real) < 0:
        theta[0] += np.pi
        o1[:, 0] = -o1[:, 0]
    o1 = o1.real
    o2 = p.T

    g = theta.sum() / 4
    t = theta - g
    coefficients = ((t[0] + t[1]) / 2, (t[1] + t[3]) / 2, (t[0] + t[3]) / 2)
    k1 = MAGIC @ o1 @ MAGIC.conj().T
    k2 = MAGIC @ o2 @ MAGIC.conj().T

    canon = _Canonicalizer(coefficients, k1, k2)
    canon.run(tol)
    ph1, a0, a1 = _factor_local(canon.k1)
    ph2, b0, b1 = _factor_local(canon.k2)
    a, b, c = (float(x) for x in canon.c)
    return TwoQubitDecomposition(
        cnot_cost=cnot_cost_from_coefficients((a, b, c), tol),
        coefficients=(a, b, c),
        post=(a0, a1),
        pre=(b0, b1),
        global_phase=float(phase + g + ph1 + ph2),
    )
