"""Schmidt truncation rules shared by every SVD in the project."""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from appCore.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Singular values below this fraction of the largest one are numerical zeros.
ZERO_FLOOR = 1e-14


@dataclass(frozen=True)
class TruncationPolicy:
    """Discarded-weight budget per cut plus an optional hard bond cap."""

    threshold: float = 0.0
    max_bond: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.threshold < 1.0:
            msg = f"threshold must lie in [0, 1), got {self.threshold}."
            raise ConfigurationError(msg)
        if self.max_bond is not None and self.max_bond < 1:
            msg = f"max_bond must be >= 1, got {self.max_bond}."
            raise ConfigurationError(msg)

    def keep_count(self, singular_values: np.ndarray) -> tuple[int, float]:
        """
        Number of singular values to keep and the discarded normalized weight.

        The largest tail of squared coefficients whose sum stays strictly below
        ``threshold`` is dropped, then ``max_bond`` is applied. At least one
        value is always kept.

        Singular values below ``ZERO_FLOOR`` relative to the largest are
        always dropped and never count towards the discarded weight.
        """
        s = np.asarray(singular_values, dtype=float)
        if s.size == 0:
            return 0, 0.0
        weights = s**2
        total = weights.sum()
        if total <= 0.0:
            return 1, 0.0
        weights = weights / total

        nonzero = int(np.count_nonzero(s > ZERO_FLOOR * s[0]))
        keep = nonzero
        if self.threshold > 0.0:
            # tail[k] = sum of weights[k:]
            tail = np.cumsum(weights[::-1])[::-1]
            below = np.nonzero(tail < self.threshold)[0]
            if below.size:
                keep = min(keep, int(below[0]))
        keep = max(keep, 1)
        if self.max_bond is not None:
            keep = min(keep, self.max_bond)
        # Values under the floor are numerical zeros, not discarded weight.
        return keep, float(weights[keep:nonzero].sum()) if keep < nonzero else 0.0

    @classmethod
    def from_cutoff(cls, cutoff: float, max_bond: int | None = None) -> "TruncationPolicy":
        """
        Policy for a Schmidt-norm cutoff: the discarded tail keeps
        sqrt(sum s_k^2) below ``cutoff``, i.e. a weight budget of cutoff**2.
        """
        return cls(threshold=cutoff**2, max_bond=max_bond)

    def to_dict(self) -> dict:
        return {"threshold": self.threshold, "max_bond": self.max_bond}


EXACT = TruncationPolicy()


def svd(matrix: np.ndarray):
    """Thin SVD with a fallback to the slower but more robust LAPACK driver."""
    try:
        return scipy.linalg.svd(matrix, full_matrices=False, lapack_driver="gesdd")
    except (np.linalg.LinAlgError, ValueError):
        logger.warning("gesdd failed on a %s matrix, retrying with gesvd", matrix.shape)
        return scipy.linalg.svd(matrix, full_matrices=False, lapack_driver="gesvd")


def truncated_svd(matrix: np.ndarray, policy: TruncationPolicy):
    """
    SVD of ``matrix`` truncated by ``policy``.

    Returns (u, s, vh, discarded) where the kept ``s`` is rescaled so that its
    squared sum matches the untruncated one.
    """
    u, s, vh = svd(matrix)
    keep, discarded = policy.keep_count(s)
    full_norm = np.linalg.norm(s)
    u, s, vh = u[:, :keep], s[:keep], vh[:keep, :]
    kept_norm = np.linalg.norm(s)
    if discarded > 0.0 and kept_norm > 0.0:
        s = s * (full_norm / kept_norm)
    return u, s, vh, discarded
