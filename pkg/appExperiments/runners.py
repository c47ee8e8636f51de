"""
Experiment drivers behind the management commands.

Each runner returns pandas frames (and the raw results where a command
writes more than a table); the commands only parse flags and write files.
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

import django
import numpy as np
import pandas as pd
from scipy import stats

from appAdapt.compiler import compile as adapt_compile
from appAdapt.config import AdaptConfig
from appAqcTensor.compiler import compile as tensor_compile
from appAqcTensor.compiler import compile_with_layer_sweep
from appAqcTensor.config import TensorConfig
from appAqcTensor.initialization import initial_log10_fidelity
from appAqcTensor.initialization import initialize
from appCircuit.circuit import Circuit
from appCircuit.compilation import CompilationResult
from appCircuit.gates import rotation
from appCircuit.metrics import cnot_metrics
from appCore.exceptions import ConfigurationError
from appExperiments.targets import random_target
from appOracle.dense import dense_ground_state
from appOracle.dense import dense_simulate
from appOracle.dense import max_qubits
from appSequential.ran import RESIDUAL_POLICY
from appSequential.ran import ran_prepare
from appSequential.schon import schon_prepare
from appSimulator.simulator import run_gates
from appSimulator.simulator import simulate
from appSpin.dmrg import DmrgResult
from appSpin.dmrg import xxz_ground_state
from appSpin.observables import staggered_magnetization
from appSpin.params import DmrgConfig
from appSpin.params import QuenchSpec
from appSpin.params import XXZParams
from appSpin.tebd import TebdTrajectory
from appSpin.tebd import tebd_evolve
from appSpin.xxz import trotter2_circuit
from appTensor.mps import MPSState
from appTensor.mps import fidelity
from appTensor.mps import normalize
from appTensor.truncation import TruncationPolicy

logger = logging.getLogger(__name__)

METHODS = ("schon", "ran", "adapt", "aqc-tensor")
PREPARATIONS = ("exact", "neel", *METHODS)
INIT_STRATEGIES = ("chi1", "random", "identity")
MIN_FIT_POINTS = 3


@dataclass(frozen=True)
class MethodOptions:
    """
    Knobs shared by every compiler a command may run.

    ``layers`` is the AQC-Tensor layer count (or the upper end of its layer
    sweep when ``layer_sweep`` is set) and the Ran layer count unless
    ``ran_layers`` is given.
    """

    epsilon: float = 1e-2
    layers: int = 1
    layer_sweep: bool = False
    ran_layers: int | None = None
    threshold: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.layers < 1 or (self.ran_layers is not None and self.ran_layers < 1):
            msg = f"Layer counts must be >= 1, got layers={self.layers}, ran_layers={self.ran_layers}."
            raise ConfigurationError(msg)

    def to_dict(self) -> dict:
        return asdict(self)


def validate_methods(methods, allowed=METHODS) -> tuple[str, ...]:
    methods = tuple(methods) or tuple(allowed)
    unknown = [m for m in methods if m not in allowed]
    if unknown:
        msg = f"Unknown method(s) {unknown}, expected a subset of {allowed}."
        raise ConfigurationError(msg)
    return methods


def _sequential_result(circuit: Circuit, f: float, method: str, policy: TruncationPolicy) -> CompilationResult:
    return CompilationResult.build(
        circuit,
        f,
        converged=True,
        method=method,
        extra={"simulation": policy.to_dict()},
    )


def compile_with_method(target: MPSState, method: str, opts: MethodOptions) -> CompilationResult:
    """Run one of the four preparation methods on ``target``."""
    target = normalize(target)
    if method == "schon":
        policy = TruncationPolicy(threshold=opts.threshold or 0.0)
        circuit = schon_prepare(target)
        return _sequential_result(circuit, fidelity(simulate(circuit, policy=policy).state, target), method, policy)
    if method == "ran":
        circuit, f = ran_prepare(target, opts.ran_layers or opts.layers)
        result = _sequential_result(circuit, f, method, RESIDUAL_POLICY)
        result.extra["layers"] = opts.ran_layers or opts.layers
        return result
    if method == "adapt":
        return adapt_compile(target, AdaptConfig(epsilon=opts.epsilon, sim_threshold=opts.threshold))
    if method == "aqc-tensor":
        cfg = TensorConfig(epsilon=opts.epsilon, sim_threshold=opts.threshold, seed=opts.seed)
        if opts.layer_sweep:
            result, rows = compile_with_layer_sweep(target, opts.layers, cfg)
            result.extra["layer_sweep"] = rows
            return result
        return tensor_compile(target, opts.layers, cfg)
    validate_methods([method])
    msg = f"Unhandled method '{method}'."
    raise ConfigurationError(msg)


# ======================== Parallel instances =========================
def init_worker() -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.local")
    django.setup()


def map_instances(fn, args: list[tuple], jobs: int) -> list:
    """``fn(*a)`` for every entry of ``args``, results in input order."""
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs, initializer=init_worker) as executor:
        return list(executor.map(fn, *zip(*args, strict=True)))


# ======================== Random-MPS benchmark =========================
def benchmark_instance(  # noqa: PLR0913
    index: int,
    seed: np.random.SeedSequence,
    length: int,
    chi: int,
    methods: tuple,
    opts: MethodOptions,
) -> list[dict]:
    rng = np.random.default_rng(seed)
    target = random_target(length, chi, rng)
    opts = replace(opts, seed=int(rng.integers(2**31)))
    rows = []
    for method in methods:
        result = compile_with_method(target, method, opts)
        rows.append({"instance": index, **result.summary()})
    logger.info(
        "Instance %d: %s",
        index,
        ", ".join(f"{r['method']} F={r['fidelity']:.4f}" for r in rows),
    )
    return rows


def run_random_benchmark(  # noqa: PLR0913
    n_instances: int,
    length: int,
    chi: int,
    methods,
    opts: MethodOptions,
    *,
    seed: int = 0,
    jobs: int = 1,
) -> pd.DataFrame:
    if n_instances < 1:
        msg = f"n_instances must be >= 1, got {n_instances}."
        raise ConfigurationError(msg)
    methods = validate_methods(methods)
    seeds = np.random.SeedSequence(seed).spawn(n_instances)
    args = [(k, s, length, chi, methods, opts) for k, s in enumerate(seeds)]
    batches = map_instances(benchmark_instance, args, jobs)
    return pd.DataFrame([row for batch in batches for row in batch])


def aggregate(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean, std, min and max of fidelity, CNOT depth and count per method."""
    stats_frame = frame.groupby("method", sort=False)[["fidelity", "cnot_depth", "cnot_count"]].agg(
        ["mean", "std", "min", "max"],
    )
    stats_frame.columns = [f"{col}_{stat}" for col, stat in stats_frame.columns]
    stats_frame["converged"] = frame.groupby("method", sort=False)["converged"].sum()
    return stats_frame.reset_index()


# ======================== XXZ ground state =========================
@dataclass
class GroundStateOutcome:
    ground: DmrgResult
    table: pd.DataFrame
    results: dict = field(default_factory=dict)


def oracle_fidelity(circuit: Circuit, p: XXZParams) -> float:
    _, gs = dense_ground_state(p)
    out = dense_simulate(circuit)
    return float(abs(np.vdot(gs, out)) ** 2)


def run_xxz_groundstate(
    p: XXZParams,
    dmrg_cfg: DmrgConfig,
    methods,
    opts: MethodOptions,
) -> GroundStateOutcome:
    """DMRG then every compiler on the ground state; dense verification when the chain is small."""
    methods = validate_methods(methods)
    ground = xxz_ground_state(p, dmrg_cfg)
    check = p.length <= max_qubits()
    rows = []
    results = {}
    for method in methods:
        result = compile_with_method(ground.state, method, opts)
        results[method] = result
        row = result.summary()
        row["sm_prepared"] = staggered_magnetization(simulate(result.circuit).state)
        if check:
            row["oracle_fidelity"] = oracle_fidelity(result.circuit, p)
        rows.append(row)
        logger.info("%s: fidelity %.6f, depth %d", method, result.fidelity, result.cnot_depth)
    return GroundStateOutcome(ground=ground, table=pd.DataFrame(rows), results=results)


# ======================== Initialization scaling =========================
def initial_log10_fidelities(target: MPSState, seed: int = 0, threshold: float | None = None) -> dict:
    """log10 of the starting fidelity of a one-layer brickwork for every strategy."""
    out = {}
    for strategy in INIT_STRATEGIES:
        cfg = TensorConfig(initialization=strategy, seed=seed, sim_threshold=threshold)
        ansatz, params = initialize(target, 1, cfg)
        out[strategy] = initial_log10_fidelity(target, ansatz, params, TruncationPolicy(threshold=cfg.sim_threshold))
    return out


def fit_slope(lengths, values) -> dict:
    """
    Least-squares fit of log10 F against L; ``slope`` is -d(log10 F)/dL.

    Non-finite points are dropped; fewer than three remaining points is an error.
    """
    x = np.asarray(lengths, dtype=float)
    y = np.asarray(values, dtype=float)
    finite = np.isfinite(y)
    if np.count_nonzero(~finite):
        logger.warning("Dropping %d non-finite log-fidelities from the fit", np.count_nonzero(~finite))
    x, y = x[finite], y[finite]
    if np.unique(x).size < MIN_FIT_POINTS:
        msg = f"A slope fit needs at least {MIN_FIT_POINTS} distinct lengths, got {np.unique(x).size}."
        raise ConfigurationError(msg)
    fit = stats.linregress(x, y)
    return {"slope": -float(fit.slope), "stderr": float(fit.stderr), "intercept": float(fit.intercept)}


def init_scaling_instance(length: int, jz: float, hz: float, dmrg_cfg: DmrgConfig, seed: int) -> list[dict]:
    ground = xxz_ground_state(XXZParams(length, jz, hz), dmrg_cfg)
    values = initial_log10_fidelities(ground.state, seed)
    logger.info("L=%d: %s", length, values)
    return [
        {"length": length, "strategy": s, "log10_fidelity": v, "fidelity": 10.0**v if math.isfinite(v) else 0.0}
        for s, v in values.items()
    ]


def run_init_scaling(  # noqa: PLR0913
    lengths,
    jz: float,
    hz: float,
    dmrg_cfg: DmrgConfig,
    *,
    seed: int = 0,
    jobs: int = 1,
) -> tuple[pd.DataFrame, pd.DataFrame]:
    lengths = sorted({int(n) for n in lengths})
    if len(lengths) < MIN_FIT_POINTS:
        msg = f"init scaling needs at least {MIN_FIT_POINTS} lengths, got {lengths}."
        raise ConfigurationError(msg)
    args = [(n, jz, hz, dmrg_cfg, seed) for n in lengths]
    frame = pd.DataFrame([row for batch in map_instances(init_scaling_instance, args, jobs) for row in batch])
    fits = []
    for strategy in INIT_STRATEGIES:
        part = frame[frame["strategy"] == strategy]
        try:
            fits.append({"strategy": strategy, **fit_slope(part["length"], part["log10_fidelity"])})
        except ConfigurationError as e:
            logger.warning("No slope for %s: %s", strategy, e)
            fits.append({"strategy": strategy, "slope": math.nan, "stderr": math.nan, "intercept": math.nan})
    return frame, pd.DataFrame(fits)


# ======================== Quench =========================
@dataclass
class QuenchOutcome:
    table: pd.DataFrame
    reference: TebdTrajectory
    preparation: CompilationResult | None = None


def neel_circuit(length: int) -> Circuit:
    return Circuit(length, tuple(rotation("x", k, math.pi) for k in range(1, length, 2)))


def prepare_quench_state(
    ground: MPSState,
    prep_method: str,
    opts: MethodOptions,
) -> tuple[Circuit, MPSState, CompilationResult | None]:
    """Preparation circuit, the state it produces and the compiler result if one ran."""
    if prep_method == "exact":
        return Circuit(ground.length), ground, None
    if prep_method == "neel":
        circuit = neel_circuit(ground.length)
        return circuit, simulate(circuit).state, None
    validate_methods([prep_method], PREPARATIONS)
    result = compile_with_method(ground, prep_method, opts)
    return result.circuit, normalize(simulate(result.circuit).state), result


def run_quench(  # noqa: PLR0913
    spec: QuenchSpec,
    prep_method: str,
    dmrg_cfg: DmrgConfig,
    opts: MethodOptions,
    *,
    tebd_dt: float,
    tebd_policy: TruncationPolicy,
    max_bond_cap: int | None = None,
) -> QuenchOutcome:
    """
    Trotterized dynamics from a prepared ground state, step by step, beside
    a fine-step TEBD reference. The reference starts from the DMRG state,
    or from the Néel state itself when ``prep_method`` is "neel".
    """
    validate_methods([prep_method], PREPARATIONS)
    ground = xxz_ground_state(spec.ground, dmrg_cfg)
    prep, state, result = prepare_quench_state(ground.state, prep_method, opts)
    start = state if prep_method == "neel" else ground.state
    reference = tebd_evolve(
        start,
        spec.quench,
        tebd_dt,
        spec.t_max,
        tebd_policy,
        record_every=spec.record_every,
        max_bond_cap=max_bond_cap,
    )
    last_t = reference.rows[-1]["t"]
    step_gates = trotter2_circuit(spec.quench, spec.dt, 1).gates
    sim_policy = TruncationPolicy(threshold=opts.threshold or 0.0)

    rows = []
    for step in range(spec.n_steps + 1):
        if step:
            state = normalize(run_gates(state, step_gates, sim_policy))
        t = step * spec.dt
        metrics = cnot_metrics(prep.compose(trotter2_circuit(spec.quench, spec.dt, step)))
        sm = staggered_magnetization(state)
        ref = reference.sm_at(t) if t <= last_t + tebd_dt / 2 else math.nan
        rows.append(
            {
                "step": step,
                "t": t,
                "sm": sm,
                "sm_reference": ref,
                "deviation": abs(sm - ref),
                **metrics.to_dict(),
            },
        )
        logger.info("Quench step %d (t=%.2f): SM %.4f, reference %.4f", step, t, sm, ref)
    return QuenchOutcome(table=pd.DataFrame(rows), reference=reference, preparation=result)

