"""Brickwork compilation of an MPS with quasi-Newton or Adam optimization."""

import logging

import numpy as np

from appAqcTensor.ansatz import BrickworkAnsatz
from appAqcTensor.config import TensorConfig
from appAqcTensor.cost import cost
from appAqcTensor.cost import cost_and_gradient
from appAqcTensor.initialization import initialize
from appAqcTensor.optimizers import OptimizationTrace
from appAqcTensor.optimizers import minimize_adam
from appAqcTensor.optimizers import minimize_lbfgs
from appCircuit.compilation import CompilationResult
from appCircuit.su4 import N_PARAMS
from appSimulator.simulator import simulate
from appTensor.mps import MPSState
from appTensor.mps import fidelity
from appTensor.mps import normalize
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)


def optimize(
    ansatz: BrickworkAnsatz,
    params: np.ndarray,
    target: MPSState,
    cfg: TensorConfig,
) -> CompilationResult:
    """Optimize ``params`` of ``ansatz`` from the given start; never raises on non-convergence."""
    target = normalize(target)
    policy = TruncationPolicy(threshold=cfg.sim_threshold)
    trace = OptimizationTrace(epsilon=cfg.epsilon)
    start_cost = cost(ansatz, params, target, policy)
    trace.record(params, start_cost)
    trace.end_iteration(start_cost)
    logger.info(
        "AQC-Tensor: %d layers, %d blocks, starting cost %.6e",
        ansatz.layers,
        len(ansatz.blocks),
        start_cost,
    )

    def fun(x):
        return cost_and_gradient(ansatz, x, target, policy)

    if ansatz.n_params and not trace.reached and cfg.max_iterations:
        if cfg.optimizer == "adam":
            minimize_adam(
                fun,
                params,
                trace,
                gtol=cfg.gtol,
                max_iterations=cfg.max_iterations,
                learning_rate=cfg.learning_rate,
            )
        else:
            minimize_lbfgs(fun, params, trace, gtol=cfg.gtol, max_iterations=cfg.max_iterations)

    best = trace.best_params
    circuit = ansatz.circuit(best)
    converged = trace.reached
    if not converged:
        logger.warning("AQC-Tensor stopped at cost %.6e above epsilon %.1e", trace.best_cost, cfg.epsilon)
    verified = fidelity(simulate(circuit, policy=policy).state, target)
    return CompilationResult.build(
        circuit,
        1.0 - trace.best_cost,
        cost_trace=list(trace.costs),
        blocks_added=len(ansatz.blocks),
        converged=converged,
        method="aqc-tensor",
        extra={
            "layers": ansatz.layers,
            "params": best.tolist(),
            "evaluations": trace.evaluations,
            "verified_fidelity": verified,
            "config": cfg.to_dict(),
        },
    )


def compile(target: MPSState, layers: int, cfg: TensorConfig | None = None) -> CompilationResult:  # noqa: A001
    cfg = cfg or TensorConfig()
    ansatz, params = initialize(target, layers, cfg)
    return optimize(ansatz, params, target, cfg)


def pad_parameters(params, ansatz: BrickworkAnsatz, grown: BrickworkAnsatz, rng, jitter: float) -> np.ndarray:
    """Previous solution plus identity blocks whose local rotations carry a small jitter."""
    extra = len(grown.blocks) - len(ansatz.blocks)
    padding = rng.normal(scale=jitter, size=(extra, N_PARAMS))
    padding[:, 6:9] = 0.0
    return np.concatenate([np.asarray(params, dtype=float), padding.reshape(-1)])


def compile_with_layer_sweep(
    target: MPSState,
    max_layers: int,
    cfg: TensorConfig | None = None,
) -> tuple[CompilationResult, list[dict]]:
    """
    Compile with 1, 2, ... layers, warm-starting each from the previous
    solution, and stop at the first layer count that converges.
    """
    cfg = cfg or TensorConfig()
    rng = np.random.default_rng(cfg.seed)
    ansatz, params = initialize(target, 1, cfg)
    rows = []
    result = None
    for layers in range(1, max_layers + 1):
        if layers > 1:
            grown = ansatz.grown()
            params = pad_parameters(result.extra["params"], ansatz, grown, rng, cfg.jitter)
            ansatz = grown
        result = optimize(ansatz, params, target, cfg)
        rows.append({"layers": layers, **result.summary()})
        logger.info("Layer sweep: %d layers, fidelity %.6f", layers, result.fidelity)
        if result.converged:
            break
    return result, rows
