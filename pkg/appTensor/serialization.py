"""MPS JSON files: {"length": L, "norm_log": x, "tensors": [{"shape", "re", "im"}, ...]}."""

import json
import math
from pathlib import Path

import numpy as np

from appCore.exceptions import DimensionError
from appTensor.mps import MPSState


def mps_to_dict(s: MPSState) -> dict:
    """Plain dict with row-major flattened tensors; the log of the norm is kept separately."""
    return {
        "length": s.length,
        "norm_log": float(s.norm_log),
        "tensors": [
            {
                "shape": list(t.shape),
                "re": t.real.reshape(-1).tolist(),
                "im": t.imag.reshape(-1).tolist(),
            }
            for t in s.tensors
        ],
    }


def mps_from_dict(data: dict) -> MPSState:
    try:
        length = int(data["length"])
        norm_log = float(data.get("norm_log", 0.0))
        entries = data["tensors"]
        tensors = []
        for k, entry in enumerate(entries):
            shape = tuple(int(x) for x in entry["shape"])
            re = np.asarray(entry["re"], dtype=float)
            im = np.asarray(entry.get("im", np.zeros_like(re)), dtype=float)
            if re.size != math.prod(shape) or im.size != re.size:
                msg = f"Tensor {k}: {re.size} values do not fill shape {shape}."
                raise DimensionError(msg)
            tensors.append((re + 1j * im).reshape(shape))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, DimensionError):
            raise
        msg = f"Malformed MPS document: {e}"
        raise DimensionError(msg) from e
    if len(tensors) != length:
        msg = f"Declared length {length} but {len(tensors)} tensors were given."
        raise DimensionError(msg)
    return MPSState(tuple(tensors), norm_log=norm_log)


def write_mps(s: MPSState, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(mps_to_dict(s)))
    return path


def read_mps(path) -> MPSState:
    return mps_from_dict(json.loads(Path(path).read_text()))
