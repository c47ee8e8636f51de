import math

import numpy as np
import pandas as pd
import pytest

from appCore.exceptions import ConfigurationError
from appExperiments.runners import METHODS
from appExperiments.runners import MethodOptions
from appExperiments.runners import aggregate
from appExperiments.runners import compile_with_method
from appExperiments.runners import fit_slope
from appExperiments.runners import initial_log10_fidelities
from appExperiments.runners import map_instances
from appExperiments.runners import neel_circuit
from appExperiments.runners import prepare_quench_state
from appExperiments.runners import run_init_scaling
from appExperiments.runners import run_quench
from appExperiments.runners import run_random_benchmark
from appExperiments.runners import run_xxz_groundstate
from appExperiments.runners import validate_methods
from appExperiments.targets import random_brickwork_target
from appSimulator.simulator import simulate
from appSpin.dmrg import xxz_ground_state
from appSpin.params import DmrgConfig
from appTensor.mps import fidelity
from appTensor.mps import neel_state
from appTensor.truncation import TruncationPolicy
from tests.factories import DmrgConfigFactory
from tests.factories import QuenchSpecFactory
from tests.factories import TruncationPolicyFactory
from tests.factories import XXZParamsFactory

OPTS = MethodOptions(epsilon=1e-2, layers=1, threshold=0.0)


def test_validate_methods():
    assert validate_methods(()) == METHODS
    assert validate_methods(["ran"]) == ("ran",)
    with pytest.raises(ConfigurationError):
        validate_methods(["qsd"])


def test_method_options_need_layers():
    with pytest.raises(ConfigurationError):
        MethodOptions(layers=0)
    with pytest.raises(ConfigurationError):
        MethodOptions(ran_layers=0)


@pytest.mark.parametrize("method", METHODS)
def test_every_method_prepares_a_brickwork_target(method, rng):
    target = random_brickwork_target(5, rng)
    result = compile_with_method(target, method, OPTS)
    assert result.method == method
    assert fidelity(simulate(result.circuit).state, target) == pytest.approx(result.fidelity, abs=1e-6)
    if method in ("schon", "ran"):
        assert result.converged
        assert result.fidelity == pytest.approx(1.0, abs=1e-8)


def test_unknown_method(rng):
    with pytest.raises(ConfigurationError):
        compile_with_method(random_brickwork_target(3, rng), "qsd", OPTS)


def test_map_instances_keeps_order():
    assert map_instances(pow, [(2, 3), (3, 2), (5, 1)], 1) == [8, 9, 5]


def test_benchmark_is_reproducible():
    kwargs = {"methods": ("schon", "ran"), "opts": OPTS, "seed": 4}
    first = run_random_benchmark(3, 5, 2, **kwargs)
    second = run_random_benchmark(3, 5, 2, **kwargs)
    pd.testing.assert_frame_equal(first, second)
    assert list(first["instance"]) == [0, 0, 1, 1, 2, 2]
    assert (first[first["method"] == "schon"]["cnot_depth"] == 8).all()


def test_aggregate():
    frame = pd.DataFrame(
        {
            "method": ["a", "b", "a", "b"],
            "fidelity": [0.9, 1.0, 0.8, 1.0],
            "cnot_depth": [6, 8, 6, 8],
            "cnot_count": [12, 8, 12, 8],
            "converged": [True, True, False, True],
        },
    )
    summary = aggregate(frame)
    assert list(summary["method"]) == ["a", "b"]
    row = summary.set_index("method").loc["a"]
    assert row["fidelity_mean"] == pytest.approx(0.85)
    assert row["fidelity_min"] == pytest.approx(0.8)
    assert row["cnot_depth_max"] == 6
    assert row["converged"] == 1


def test_fit_slope():
    lengths = [10, 20, 30, 40]
    values = [2.0 - 0.1 * n for n in lengths]
    fit = fit_slope(lengths, values)
    assert fit["slope"] == pytest.approx(0.1)
    assert fit["intercept"] == pytest.approx(2.0)
    assert fit_slope([*lengths, 50], [*values, -math.inf])["slope"] == pytest.approx(0.1)


@pytest.mark.parametrize(("lengths", "values"), [([1, 2], [0.0, -1.0]), ([1, 2, 3], [0.0, -math.inf, -1.0]), ([4, 4, 4], [0.0, -1.0, -2.0])])
def test_fit_slope_needs_three_lengths(lengths, values):
    with pytest.raises(ConfigurationError):
        fit_slope(lengths, values)


def test_initial_fidelities_of_a_neel_state():
    values = initial_log10_fidelities(neel_state(6), seed=1, threshold=0.0)
    assert values["chi1"] == pytest.approx(0.0, abs=1e-10)
    assert values["identity"] == -math.inf
    assert values["random"] < 0.0


def test_xxz_groundstate_against_the_dense_oracle():
    p = XXZParamsFactory(length=6)
    outcome = run_xxz_groundstate(p, DmrgConfigFactory(), ("schon", "ran"), MethodOptions(layers=1, ran_layers=2))
    assert outcome.ground.converged
    table = outcome.table.set_index("method")
    assert table.loc["schon", "oracle_fidelity"] == pytest.approx(1.0, abs=1e-6)
    assert table.loc["ran", "oracle_fidelity"] == pytest.approx(table.loc["ran", "fidelity"], abs=1e-6)
    assert set(outcome.results) == {"schon", "ran"}


def test_init_scaling_points_and_fits():
    points, fits = run_init_scaling([4, 6, 8], 2.5, 0.0, DmrgConfigFactory())
    assert len(points) == 9
    slopes = fits.set_index("strategy")["slope"]
    assert math.isfinite(slopes["chi1"])
    identity = points[points["strategy"] == "identity"]["log10_fidelity"]
    assert (identity < -10).all()
    with pytest.raises(ConfigurationError):
        run_init_scaling([4, 6], 2.5, 0.0, DmrgConfigFactory())


def test_neel_circuit():
    assert fidelity(simulate(neel_circuit(6)).state, neel_state(6)) == pytest.approx(1.0)


def test_exact_preparation_is_the_ground_state(rng):
    target = random_brickwork_target(4, rng)
    circuit, state, result = prepare_quench_state(target, "exact", OPTS)
    assert len(circuit) == 0
    assert state is target
    assert result is None


@pytest.mark.parametrize("prep", ["exact", "schon"])
def test_quench_follows_the_reference(prep):
    outcome = run_quench(
        QuenchSpecFactory(),
        prep,
        DmrgConfigFactory(),
        OPTS,
        tebd_dt=0.05,
        tebd_policy=TruncationPolicyFactory(),
    )
    table = outcome.table
    assert list(table["step"]) == [0, 1, 2]
    assert table.loc[0, "deviation"] == pytest.approx(0.0, abs=1e-6)
    assert np.all(np.diff(table["cnot_count"]) > 0)
    assert outcome.reference.completed
    assert (outcome.preparation is None) == (prep == "exact")


@pytest.mark.parametrize("prep", ["exact", "neel"])
def test_reference_starts_from_the_prepared_state(prep):
    outcome = run_quench(
        QuenchSpecFactory(),
        prep,
        DmrgConfigFactory(),
        OPTS,
        tebd_dt=0.05,
        tebd_policy=TruncationPolicyFactory(),
    )
    table = outcome.table
    assert table.loc[0, "deviation"] < 1e-10
    assert table.loc[0, "sm_reference"] == pytest.approx(table.loc[0, "sm"], abs=1e-10)


def test_quench_from_neel():
    outcome = run_quench(
        QuenchSpecFactory(dt=0.25, n_steps=4),
        "neel",
        DmrgConfigFactory(),
        OPTS,
        tebd_dt=0.05,
        tebd_policy=TruncationPolicyFactory(),
    )
    table = outcome.table
    assert table.loc[0, "sm"] == pytest.approx(-0.5)
    assert table.loc[0, "sm_reference"] == pytest.approx(-0.5)
    assert table.loc[0, "cnot_count"] == 0
    assert (table["deviation"] < 0.05).all()


def test_trotter_path_tracks_the_fine_step_reference():
    spec = QuenchSpecFactory(
        ground=XXZParamsFactory(length=8, jz=2.5),
        quench=XXZParamsFactory(length=8, jz=1.2, hz=0.5),
        dt=0.25,
        n_steps=4,
    )
    outcome = run_quench(
        spec,
        "exact",
        DmrgConfigFactory(),
        OPTS,
        tebd_dt=0.05,
        tebd_policy=TruncationPolicyFactory(),
    )
    table = outcome.table
    assert list(table["step"]) == [0, 1, 2, 3, 4]
    assert table["sm_reference"].notna().all()
    assert (table["deviation"] < 0.05).all()


def test_partial_reference_leaves_gaps():
    outcome = run_quench(
        QuenchSpecFactory(),
        "exact",
        DmrgConfigFactory(),
        OPTS,
        tebd_dt=0.05,
        tebd_policy=TruncationPolicyFactory(),
        max_bond_cap=1,
    )
    assert not outcome.reference.completed
    assert math.isnan(outcome.table.loc[2, "sm_reference"])


@pytest.mark.slow
def test_one_layer_recovers_a_long_brickwork_target():
    rng = np.random.default_rng(7)
    target = random_brickwork_target(50, rng)
    result = compile_with_method(target, "aqc-tensor", MethodOptions(epsilon=1e-2, layers=1, threshold=1e-8))
    assert result.converged
    assert result.cnot_depth == 6
    assert result.cnot_count == 3 * 49


@pytest.mark.slow
def test_scaled_random_benchmark_depths_and_counts():
    frame = run_random_benchmark(10, 16, 2, METHODS, MethodOptions(epsilon=1e-2, layers=1), seed=0)
    by_method = dict(tuple(frame.groupby("method")))
    for method in ("schon", "ran"):
        rows = by_method[method]
        assert (rows["cnot_depth"] == 30).all()
        assert (rows["cnot_count"] == 30).all()
        assert (rows["fidelity"] > 1 - 1e-9).all()
    tensor = by_method["aqc-tensor"]
    assert (tensor["cnot_depth"] == 6).all()
    assert (tensor["cnot_count"] == 45).all()
    assert (tensor["fidelity"] >= 0.99).sum() >= 9
    adapt = by_method["adapt"]
    assert adapt["fidelity"].mean() >= 0.97
    assert adapt["cnot_depth"].mean() <= 35


@pytest.mark.slow
def test_chi1_start_on_the_long_chain_ground_state():
    ground = xxz_ground_state(XXZParamsFactory(length=50, jz=2.5), DmrgConfig())
    values = initial_log10_fidelities(ground.state)
    assert 10 ** values["chi1"] == pytest.approx(0.11, abs=2e-2)


@pytest.mark.slow
def test_long_chain_quench_reference_and_trotter_path():
    spec = QuenchSpecFactory(
        ground=XXZParamsFactory(length=50, jz=2.5),
        quench=XXZParamsFactory(length=50, jz=1.2, hz=0.5),
        dt=1.0,
        n_steps=5,
    )
    outcome = run_quench(
        spec,
        "exact",
        DmrgConfig(),
        MethodOptions(threshold=1e-10),
        tebd_dt=0.1,
        tebd_policy=TruncationPolicy.from_cutoff(1e-5, max_bond=512),
    )
    table = outcome.table
    assert outcome.reference.completed
    assert table.loc[0, "sm_reference"] == pytest.approx(-0.404, abs=1e-2)
    assert table.loc[5, "sm_reference"] == pytest.approx(-0.047, abs=2e-2)
    assert (table["deviation"] < 0.05).all()
