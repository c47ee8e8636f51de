"""
Adaptive-ansatz compilation of an MPS.

Blocks A_1, A_2, ... are applied to the target until the result is close
to the reference state |s> (|0...0> or the chi=1 approximation of the
target). The preparation circuit is then S followed by A_N^dagger ...
A_1^dagger, where S prepares |s>.
"""

import logging

from appAdapt.ansatz import AnsatzBlock
from appAdapt.config import AdaptConfig
from appAdapt.context import AdaptContext
from appAdapt.gradients import select_pair
from appAdapt.rotations import rotoselect
from appAdapt.rotations import rotosolve_sweep
from appCircuit.circuit import Circuit
from appCircuit.circuit import inverse
from appCircuit.compilation import CompilationResult
from appCore.exceptions import DimensionError
from appSequential.schon import staircase_gates
from appSimulator.simulator import SimulationContext
from appSimulator.simulator import simulate
from appTensor.compression import compress
from appTensor.mps import MPSState
from appTensor.mps import fidelity
from appTensor.mps import normalize
from appTensor.mps import zero_state
from appTensor.observables import two_site_environment
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


def starting_circuit(target: MPSState, cfg: AdaptConfig) -> tuple[Circuit, MPSState]:
    """Circuit S and the reference state |s> = S|0...0>."""
    if cfg.starting_circuit == "none":
        return Circuit(target.length), zero_state(target.length)
    if cfg.starting_circuit == "user":
        c = cfg.user_circuit
        if c.n_qubits != target.length:
            msg = f"Starting circuit has {c.n_qubits} qubits, target {target.length} sites."
            raise DimensionError(msg)
        return c, normalize(simulate(c).state)
    product, f = compress(target, 1, "variational")
    logger.info("chi=1 starting state has fidelity %.6f with the target", f)
    return Circuit(target.length, tuple(staircase_gates(product, m=0))), normalize(product)


def _prepared_circuit(start: Circuit, blocks: list[AnsatzBlock], n_qubits: int) -> Circuit:
    ansatz = Circuit(n_qubits, tuple(g for b in blocks for g in b.gates()))
    return Circuit(n_qubits, start.gates).compose(inverse(ansatz))


def compile(target: MPSState, cfg: AdaptConfig | None = None) -> CompilationResult:  # noqa: A001
    """
    Grow the ansatz one block at a time until 1 - |<s|A_N...A_1|target>|^2
    drops to ``cfg.epsilon`` or the block cap is reached.
    """
    cfg = cfg or AdaptConfig()
    target = normalize(target)
    policy = TruncationPolicy(threshold=cfg.sim_threshold)
    start, reference = starting_circuit(target, cfg)
    ctx = AdaptContext(sim=SimulationContext(cached_state=target, policy=policy), reference=reference)

    psi = target
    cost = ctx.cost(psi)
    trace = [(0, cost)]
    logger.info("ADAPT start: cost %.6e, epsilon %.1e", cost, cfg.epsilon)
    cap = cfg.block_cap(target.length)
    previous = None
    iteration = 0
    while cost > cfg.epsilon and iteration < cap:
        iteration += 1
        forbidden = {previous} if previous is not None and target.length > 2 else set()  # noqa: PLR2004
        pair, grad_norm = select_pair(psi, reference, cfg, forbidden)
        env = two_site_environment(reference, psi, *pair)
        block, cost = rotoselect(AnsatzBlock(pair, axes=cfg.gradient_axes), env, cfg)
        ctx.blocks.append(block)
        if cfg.rotosolve_frequency and iteration % cfg.rotosolve_frequency == 0:
            cost = rotosolve_sweep(ctx, cfg)
        if cfg.rotosolve_window is not None:
            while len(ctx.blocks) > cfg.rotosolve_window:
                ctx.freeze_oldest()
        psi = ctx.current_state()
        cost = ctx.cost(psi)
        trace.append((iteration, cost))
        previous = pair
        logger.info(
            "ADAPT iteration %d: pair %s (|grad| %.3e), cost %.6e",
            iteration,
            pair,
            grad_norm,
            cost,
        )

    converged = cost <= cfg.epsilon
    if not converged:
        logger.warning("ADAPT stopped at the block cap %d with cost %.6e", cap, cost)
    circuit = _prepared_circuit(start, ctx.all_blocks, target.length)
    verified = fidelity(simulate(circuit, policy=policy).state, target)
    return CompilationResult.build(
        circuit,
        1.0 - cost,
        cost_trace=trace,
        blocks_added=len(ctx.all_blocks),
        converged=converged,
        method="adapt",
        extra={"verified_fidelity": verified, "config": cfg.to_dict()},
    )
