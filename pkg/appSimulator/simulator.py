"""Circuit evaluation on MPS, with an optional cached prefix."""

import logging
from dataclasses import dataclass
from dataclasses import field

from appCore.exceptions import DimensionError
from appCore.exceptions import GateValidationError
from appCircuit.circuit import Circuit
from appTensor.mps import MPSState
from appTensor.mps import apply_gate
from appTensor.mps import max_bond
from appTensor.mps import zero_state
from appTensor.truncation import EXACT
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationResult:
    state: MPSState
    discarded_weight: float
    max_bond: int


def run_gates(state: MPSState, gates, policy: TruncationPolicy) -> MPSState:
    """Apply gates in order; non-adjacent two-qubit gates go through SWAP chains."""
    for g in gates:
        if max(g.qubits) >= state.length:
            msg = f"{g!r} does not fit a {state.length}-site state."
            raise GateValidationError(msg)
        state = apply_gate(state, g.qubits, g.unitary(), policy)
    return state


def simulate(
    c: Circuit,
    init: MPSState | None = None,
    policy: TruncationPolicy = EXACT,
) -> SimulationResult:
    """Run ``c`` on ``init`` (default: the circuit's attached state, else |0...0>)."""
    start = init if init is not None else c.initial_state
    if start is None:
        start = zero_state(c.n_qubits)
    if start.length != c.n_qubits:
        msg = f"Initial state has {start.length} sites, circuit has {c.n_qubits} qubits."
        raise DimensionError(msg)
    state = run_gates(start, c.gates, policy)
    discarded = state.truncation_error - start.truncation_error
    return SimulationResult(state=state, discarded_weight=discarded, max_bond=max_bond(state))


@dataclass
class SimulationContext:
    """
    A cached state plus the gates still to be applied to it.

    ``cached_state`` is the target (or target with a fixed prefix already
    applied); ``absorb`` moves gates from ``pending_gates`` into the cache.
    """

    cached_state: MPSState
    pending_gates: list = field(default_factory=list)
    policy: TruncationPolicy = EXACT
    absorbed: int = 0

    def push(self, *gates) -> None:
        self.pending_gates.extend(gates)

    def absorb(self, count: int | None = None) -> None:
        """Fold the first ``count`` pending gates (default all) into the cached state."""
        count = len(self.pending_gates) if count is None else count
        if not 0 <= count <= len(self.pending_gates):
            msg = f"Cannot absorb {count} of {len(self.pending_gates)} pending gates."
            raise DimensionError(msg)
        fixed, self.pending_gates = self.pending_gates[:count], self.pending_gates[count:]
        self.cached_state = run_gates(self.cached_state, fixed, self.policy)
        self.absorbed += count
        logger.debug("Absorbed %d gates into the cached state (%d total)", count, self.absorbed)


def evaluate_with_cache(ctx: SimulationContext, gates=None) -> MPSState:
    """Cached state with the pending gates (or ``gates`` in their place) applied."""
    tail = ctx.pending_gates if gates is None else gates
    return run_gates(ctx.cached_state, tail, ctx.policy)
