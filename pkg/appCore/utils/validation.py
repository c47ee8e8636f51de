import numpy as np

from appCore.exceptions import GateValidationError
from appCore.exceptions import SiteIndexError

UNITARY_TOL = 1e-10


def require_unitary(matrix, dim: int, tol: float = UNITARY_TOL) -> np.ndarray:
    """Return ``matrix`` as a complex (dim, dim) array or raise GateValidationError."""
    try:
        arr = np.asarray(matrix, dtype=complex)
    except (TypeError, ValueError) as e:
        msg = f"Gate payload is not numeric: {e}"
        raise GateValidationError(msg) from e
    if arr.shape != (dim, dim):
        msg = f"Expected a {dim}x{dim} unitary, got shape {arr.shape}."
        raise GateValidationError(msg)
    if not np.all(np.isfinite(arr)):
        msg = "Gate payload contains non-finite entries."
        raise GateValidationError(msg)
    residual = np.linalg.norm(arr.conj().T @ arr - np.eye(dim), ord=np.inf)
    if residual > tol:
        msg = f"Gate payload is not unitary (residual {residual:.3e} > {tol:.0e})."
        raise GateValidationError(msg)
    return arr


def require_site(site: int, length: int, name: str = "site") -> int:
    if not 0 <= site < length:
        msg = f"{name} {site} is outside the chain of length {length}."
        raise SiteIndexError(msg)
    return int(site)
