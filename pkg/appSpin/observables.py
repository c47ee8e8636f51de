import numpy as np

from appTensor.mps import MPSState
from appTensor.mps import apply_single_site_gate
from appTensor.observables import SZ
from appTensor.observables import local_expectations

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def staggered_magnetization(s: MPSState) -> float:
    """(1/L) sum_{i=1..L} (-1)^i <Sz_i>, so a Neel state with site 1 up gives -1/2."""
    sz = local_expectations(s, SZ).real
    signs = np.where(np.arange(1, s.length + 1) % 2 == 0, 1.0, -1.0)
    return float(np.dot(signs, sz) / s.length)


def spin_flip(s: MPSState) -> MPSState:
    """Global X layer."""
    for k in range(s.length):
        s = apply_single_site_gate(s, k, PAULI_X)
    return s
