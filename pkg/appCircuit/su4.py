"""
Fifteen-parameter SU(4) block.

    U(theta) = (A0 x A1) . exp(i (cx XX + cy YY + cz ZZ)) . (B0 x B1)

theta[0:3] -> A0, theta[3:6] -> A1, theta[6:9] -> (cx, cy, cz),
theta[9:12] -> B0, theta[12:15] -> B1. Each single-qubit factor is
RZ(a) RY(b) RZ(c). The first factor of a Kronecker product acts on the
first qubit of the block.
"""

import numpy as np

N_PARAMS = 15

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
XX = np.kron(X, X)
YY = np.kron(Y, Y)
ZZ = np.kron(Z, Z)

# Columns: (|00>+|11>), i(|01>+|10>), (|01>-|10>), i(|00>-|11>), each over sqrt 2.
MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]],
    dtype=complex,
) / np.sqrt(2)


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def zyz(a: float, b: float, c: float) -> np.ndarray:
    return rz(a) @ ry(b) @ rz(c)


def zyz_derivatives(a: float, b: float, c: float) -> tuple:
    """d/da, d/db, d/dc of RZ(a) RY(b) RZ(c)."""
    za, yb, zc = rz(a), ry(b), rz(c)
    return (
        -0.5j * Z @ za @ yb @ zc,
        za @ (-0.5j * Y @ yb) @ zc,
        za @ yb @ zc @ (-0.5j * Z),
    )


def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """(phase, a, b, c) with u = exp(i phase) RZ(a) RY(b) RZ(c)."""
    u = np.asarray(u, dtype=complex)
    det_phase = np.angle(np.linalg.det(u)) / 2
    v = u * np.exp(-1j * det_phase)
    b = 2 * np.arctan2(abs(v[1, 0]), abs(v[0, 0]))
    sum_half = np.angle(v[1, 1]) if abs(v[1, 1]) > 1e-12 else 0.0  # noqa: PLR2004
    diff_half = np.angle(v[1, 0]) if abs(v[1, 0]) > 1e-12 else 0.0  # noqa: PLR2004
    # v[1,1] = exp(i(a+c)/2) cos(b/2), v[1,0] = exp(i(a-c)/2) sin(b/2)
    a = sum_half + diff_half
    c = sum_half - diff_half
    rebuilt = zyz(a, b, c)
    idx = np.unravel_index(np.argmax(np.abs(rebuilt)), rebuilt.shape)
    phase = np.angle(u[idx] / rebuilt[idx])
    return float(phase), float(a), float(b), float(c)


def interaction(cx: float, cy: float, cz: float) -> np.ndarray:
    """exp(i (cx XX + cy YY + cz ZZ)); the three terms commute."""
    # In the magic basis the interaction is diagonal.
    phases = np.array([cx - cy + cz, cx + cy - cz, -cx - cy - cz, -cx + cy + cz])
    return MAGIC @ np.diag(np.exp(1j * phases)) @ MAGIC.conj().T


def su4_from_params(theta) -> np.ndarray:
    t = np.asarray(theta, dtype=float)
    post = np.kron(zyz(*t[0:3]), zyz(*t[3:6]))
    pre = np.kron(zyz(*t[9:12]), zyz(*t[12:15]))
    return post @ interaction(*t[6:9]) @ pre


def su4_derivatives(theta) -> np.ndarray:
    """Array of shape (15, 4, 4) with dU/dtheta_k."""
    t = np.asarray(theta, dtype=float)
    a0, a1 = zyz(*t[0:3]), zyz(*t[3:6])
    b0, b1 = zyz(*t[9:12]), zyz(*t[12:15])
    core = interaction(*t[6:9])
    post, pre = np.kron(a0, a1), np.kron(b0, b1)
    out = np.empty((N_PARAMS, 4, 4), dtype=complex)
    for k, d in enumerate(zyz_derivatives(*t[0:3])):
        out[k] = np.kron(d, a1) @ core @ pre
    for k, d in enumerate(zyz_derivatives(*t[3:6])):
        out[3 + k] = np.kron(a0, d) @ core @ pre
    for k, gen in enumerate((XX, YY, ZZ)):
        out[6 + k] = post @ (1j * gen @ core) @ pre
    for k, d in enumerate(zyz_derivatives(*t[9:12])):
        out[9 + k] = post @ core @ np.kron(d, b1)
    for k, d in enumerate(zyz_derivatives(*t[12:15])):
        out[12 + k] = post @ core @ np.kron(b0, d)
    return out


def su4_inverse_params(theta) -> np.ndarray:
    """Parameters of U(theta)^dagger; applying it twice returns theta exactly."""
    t = np.asarray(theta, dtype=float)
    return np.concatenate(
        [
            -t[9:12][::-1],
            -t[12:15][::-1],
            -t[6:9],
            -t[0:3][::-1],
            -t[3:6][::-1],
        ],
    )
