from dataclasses import dataclass

import numpy as np

from appCore.exceptions import DimensionError


@dataclass(frozen=True)
class MPOOperator:
    """Tensor-train operator with tensors W[a, s_out, s_in, b]."""

    tensors: tuple

    def __post_init__(self):
        tensors = tuple(np.asarray(w, dtype=complex) for w in self.tensors)
        object.__setattr__(self, "tensors", tensors)
        if not tensors:
            msg = "An MPO needs at least one site."
            raise DimensionError(msg)
        for k, w in enumerate(tensors):
            if w.ndim != 4 or w.shape[1:3] != (2, 2):  # noqa: PLR2004
                msg = f"Site {k} operator tensor has shape {w.shape}, expected (D_l, 2, 2, D_r)."
                raise DimensionError(msg)
        if tensors[0].shape[0] != 1 or tensors[-1].shape[3] != 1:
            msg = "Boundary operator bonds must have dimension 1."
            raise DimensionError(msg)
        for k in range(len(tensors) - 1):
            if tensors[k].shape[3] != tensors[k + 1].shape[0]:
                msg = f"Operator bond {k} does not chain: {tensors[k].shape} -> {tensors[k + 1].shape}."
                raise DimensionError(msg)

    @property
    def length(self) -> int:
        return len(self.tensors)

    @property
    def bond_dimension(self) -> int:
        return max(w.shape[3] for w in self.tensors)
