"""
Closed-form single-angle optimizers.

For a rotation exp(-i theta P / 2) the cost is C(theta) = A + B cos(theta)
+ D sin(theta), so three evaluations fix the whole curve.
"""

import logging
import math

import numpy as np

from appAdapt.ansatz import N_ANGLES
from appAdapt.ansatz import AnsatzBlock
from appAdapt.config import AXES
from appAdapt.config import AdaptConfig
from appAdapt.context import AdaptContext
from appSimulator.simulator import run_gates
from appTensor.mps import normalize
from appTensor.observables import two_site_environment

logger = logging.getLogger(__name__)

HALF_PI = math.pi / 2


def wrap_angle(theta: float) -> float:
    return float(math.remainder(theta, 2 * math.pi))


def sinusoid_minimum(c0: float, c_plus: float, c_minus: float, phi0: float = 0.0) -> tuple[float, float]:
    """
    Minimizer and minimum of C from C(phi0), C(phi0 + pi/2), C(phi0 - pi/2).
    """
    a = 0.5 * (c_plus + c_minus)
    b = c0 - a
    d = 0.5 * (c_plus - c_minus)
    theta = phi0 + math.pi + math.atan2(d, b)
    return wrap_angle(theta), a - math.hypot(b, d)


def sinusoid(c0: float, c_plus: float, c_minus: float, theta: float, phi0: float = 0.0) -> float:
    """C(theta) reconstructed from three evaluations."""
    a = 0.5 * (c_plus + c_minus)
    b = c0 - a
    d = 0.5 * (c_plus - c_minus)
    return a + b * math.cos(theta - phi0) + d * math.sin(theta - phi0)


def block_cost(block: AnsatzBlock, env: np.ndarray) -> float:
    """1 - |<bra| block |ket>|^2 for normalized bra and ket with environment ``env``."""
    return float(1.0 - abs(np.sum(env * block.matrix())) ** 2)


def _angle_curve(block: AnsatzBlock, k: int, axis: str, env: np.ndarray, phi0: float) -> tuple[float, float]:
    costs = [block_cost(block.with_angle(k, phi0 + shift, axis), env) for shift in (0.0, HALF_PI, -HALF_PI)]
    return sinusoid_minimum(*costs, phi0=phi0)


def rotoselect(block: AnsatzBlock, env: np.ndarray, cfg: AdaptConfig) -> tuple[AnsatzBlock, float]:
    """
    Jointly choose axis and angle of every rotation of ``block``.

    Sweeps until one sweep improves the cost by less than
    ``cfg.rotoselect_tol``. A change is only kept when it lowers the cost.
    """
    cost = block_cost(block, env)
    for sweep in range(cfg.max_rotoselect_sweeps):
        start = cost
        for k in range(N_ANGLES):
            for axis in AXES:
                phi0 = block.angles[k] if axis == block.axes[k] else 0.0
                theta, value = _angle_curve(block, k, axis, env, phi0)
                if value < cost:
                    block, cost = block.with_angle(k, theta, axis), value
        logger.debug("Rotoselect sweep %d on %s: cost %.6e", sweep + 1, block.pair, cost)
        if start - cost < cfg.rotoselect_tol:
            break
    return block, block_cost(block, env)


def rotosolve_block(block: AnsatzBlock, env: np.ndarray) -> tuple[AnsatzBlock, float]:
    """One pass of closed-form angle updates with fixed axes."""
    cost = block_cost(block, env)
    for k in range(N_ANGLES):
        theta, value = _angle_curve(block, k, block.axes[k], env, block.angles[k])
        if value < cost:
            block, cost = block.with_angle(k, theta), value
    return block, cost


def rotosolve_sweep(ctx: AdaptContext, cfg: AdaptConfig) -> float:
    """
    Rotosolve every active block, repeating full sweeps until one improves
    the cost by less than ``cfg.rotosolve_tol``. Returns the final cost.
    """
    policy = ctx.sim.policy
    cost = ctx.cost()
    for sweep in range(cfg.max_rotosolve_sweeps):
        start = cost
        # bras[n] = A_{n+1}^dagger ... A_N^dagger |reference>
        bras = [None] * len(ctx.blocks)
        bra = ctx.reference
        for n in range(len(ctx.blocks) - 1, -1, -1):
            bras[n] = bra
            bra = normalize(run_gates(bra, ctx.blocks[n].inverse_gates(), policy))
        ket = ctx.sim.cached_state
        for n, block in enumerate(ctx.blocks):
            env = two_site_environment(bras[n], ket, *block.pair)
            block, cost = rotosolve_block(block, env)
            ctx.blocks[n] = block
            ket = normalize(run_gates(ket, block.gates(), policy))
        logger.debug("Rotosolve sweep %d over %d blocks: cost %.6e", sweep + 1, len(ctx.blocks), cost)
        if start - cost < cfg.rotosolve_tol:
            break
    return cost
