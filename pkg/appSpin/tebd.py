"""Second-order TEBD reference dynamics for the XXZ chain."""

import logging
import math
from dataclasses import dataclass
from dataclasses import field

import pandas as pd

from appCore.exceptions import BondCapExceeded
from appCore.exceptions import ConfigurationError
from appSimulator.simulator import run_gates
from appSpin.observables import staggered_magnetization
from appSpin.params import XXZParams
from appSpin.xxz import trotter2_circuit
from appTensor.mps import MPSState
from appTensor.mps import max_bond
from appTensor.mps import normalize
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


@dataclass
class TebdTrajectory:
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    completed: bool = True
    max_bond: int = 1

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["t", "sm", "max_chi", "truncation_error"])

    def sm_at(self, t: float) -> float:
        """Staggered magnetization at the recorded fine step closest to ``t``."""
        row = min(self.rows, key=lambda r: abs(r["t"] - t))
        return row["sm"]


def _row(t: float, state: MPSState) -> dict:
    return {
        "t": round(t, 12),
        "sm": staggered_magnetization(state),
        "max_chi": max_bond(state),
        "truncation_error": state.truncation_error,
    }


def tebd_evolve(  # noqa: PLR0913
    s: MPSState,
    p: XXZParams,
    dt: float,
    t_max: float,
    policy: TruncationPolicy,
    *,
    record_every: float = 1.0,
    max_bond_cap: int | None = None,
    allow_partial: bool = True,
) -> TebdTrajectory:
    """
    Evolve ``s`` under the XXZ Hamiltonian ``p`` up to ``t_max`` in steps of ``dt``.

    SM, max bond and accumulated truncation error are recorded at every step;
    states only every ``record_every``. When the bond dimension exceeds
    ``max_bond_cap`` the trajectory stops and is flagged incomplete, or
    ``BondCapExceeded`` is raised if ``allow_partial`` is False.
    """
    if dt <= 0.0 or t_max < 0.0:
        msg = f"dt must be positive and t_max non-negative, got dt={dt}, t_max={t_max}."
        raise ConfigurationError(msg)
    if s.length != p.length:
        msg = f"State has {s.length} sites, Hamiltonian {p.length}."
        raise ConfigurationError(msg)
    n_steps = round(t_max / dt)
    keep_every = max(1, round(record_every / dt))
    step_gates = trotter2_circuit(p, dt, 1).gates

    state = normalize(s)
    traj = TebdTrajectory(times=[0.0], states=[state], rows=[_row(0.0, state)], max_bond=max_bond(state))
    for step in range(1, n_steps + 1):
        state = run_gates(state, step_gates, policy)
        t = step * dt
        chi = max_bond(state)
        traj.max_bond = max(traj.max_bond, chi)
        if max_bond_cap is not None and chi > max_bond_cap:
            msg = f"Bond dimension {chi} exceeds the cap {max_bond_cap} at t={t:.3f}."
            if not allow_partial:
                raise BondCapExceeded(msg)
            logger.warning("%s Stopping with a partial trajectory.", msg)
            traj.completed = False
            break
        traj.rows.append(_row(t, state))
        if step % keep_every == 0 or step == n_steps:
            traj.times.append(t)
            traj.states.append(state)
        if math.isclose(t % 1.0, 0.0, abs_tol=dt / 2) or math.isclose(t % 1.0, 1.0, abs_tol=dt / 2):
            logger.info("TEBD t=%.2f SM=%.6f chi=%d", t, traj.rows[-1]["sm"], chi)
    return traj
