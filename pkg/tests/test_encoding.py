import math

import numpy as np
import pytest

from esplab import (
    DimensionError,
    IdentitySystem,
    InputSegment,
    NumericError,
    ReservoirSystem,
    RngStream,
    ScalarTanhSystem,
    StateEnsemble,
    directed_distance,
    encoding_approximation,
    ensemble_diameter,
    esp_indicator,
    hausdorff_distance,
    make_sinusoid,
    make_uniform_random,
    propagate_ensemble,
    run_trajectory,
    sample_states,
)
from esplab.systems import FunctionSystem


@pytest.fixture(scope="module")
def res10():
    return ReservoirSystem.random(10, 1, RngStream(1, 0), param_range=(0.0, 2.0))


def test_identity_propagation_is_identity():
    init = sample_states(30, 3, "interior", RngStream(0))
    out = propagate_ensemble(IdentitySystem(3), 0.7, make_sinusoid(40), init)
    assert np.array_equal(out.points, init.points)
    assert out.provenance.steps == 40


def test_single_step_at_zero_alpha_collapses(res10):
    seg = make_sinusoid(7)
    out = propagate_ensemble(res10, 0.0, seg.last(1), sample_states(25, 10, "boundary", RngStream(1)))
    np.testing.assert_array_equal(out.points, np.tile(np.tanh(res10.A @ seg.values[-1]), (25, 1)))
    assert ensemble_diameter(out) == 0.0


def test_scalar_contraction_example():
    sys = ScalarTanhSystem(1.0, 1.0)
    out = propagate_ensemble(sys, 0.5, InputSegment(np.zeros((20, 1))), np.array([[-1.0], [1.0]]))
    assert abs(out.points[0, 0] - out.points[1, 0]) <= 2 * 0.5**20


def test_scatter_and_large_ensemble_sizes():
    seg = make_sinusoid(500)
    two = ReservoirSystem.random(2, 1, RngStream(0, 0))
    S = encoding_approximation(two, 1.2, seg, 1000, "boundary", RngStream(0, 2))
    assert S.points.shape == (1000, 2) and np.all(np.abs(S.points) <= 1)
    big = ReservoirSystem.random(250, 1, RngStream(0, 0))
    S = encoding_approximation(big, 1.2, seg, 50, "interior", RngStream(0, 2))
    assert len(S) == 50 and S.dim == 250


def test_contraction_diameter_bound(res10):
    alpha = 0.5 / res10.sigma_max
    S = encoding_approximation(res10, alpha, make_sinusoid(100), 40, "boundary", RngStream(3))
    assert ensemble_diameter(S) <= 2 * math.sqrt(10) * 0.5**100


def test_esp_indicator(res10):
    assert esp_indicator(StateEnsemble(np.array([[0.3, 0.1]])), 1e-12)
    assert not esp_indicator(StateEnsemble(np.array([[0.0], [0.5]])), 1e-6)
    alpha = 0.5 / res10.sigma_max
    S = encoding_approximation(res10, alpha, make_uniform_random(500, 1, 1.0, RngStream(0, 1)), 50, "interior", 4)
    assert esp_indicator(S, 1e-6)


def test_diameter_decreases_under_contraction(res10):
    alpha = 0.9 / res10.sigma_max
    rate = alpha * res10.sigma_max
    seg = make_uniform_random(60, 1, 1.0, RngStream(5, 1))
    Y = sample_states(40, 10, "boundary", RngStream(5, 2))
    d = ensemble_diameter(Y)
    for k in range(len(seg)):
        Y = propagate_ensemble(res10, alpha, InputSegment(seg.values[k : k + 1]), Y)
        nd = ensemble_diameter(Y)
        assert nd <= rate * d + 1e-12
        d = nd


def test_composition_is_bitwise(res10):
    seg = make_uniform_random(50, 1, 1.0, RngStream(6, 1))
    init = sample_states(20, 10, "interior", RngStream(6, 2))
    whole = propagate_ensemble(res10, 1.3, seg, init)
    head = propagate_ensemble(res10, 1.3, InputSegment(seg.values[:30]), init)
    tail = propagate_ensemble(res10, 1.3, InputSegment(seg.values[30:]), head)
    assert np.array_equal(whole.points, tail.points)
    assert tail.provenance.steps == 50


def test_permutation_equivariance(res10):
    seg = make_sinusoid(30)
    init = sample_states(20, 10, "interior", RngStream(7))
    perm = RngStream(7, 1).generator().permutation(20)
    a = propagate_ensemble(res10, 1.1, seg, init).points
    b = propagate_ensemble(res10, 1.1, seg, init.points[perm]).points
    assert np.array_equal(a[perm], b)


def test_nesting_on_a_grid():
    sys = ScalarTanhSystem(1.0, 1.0, param_range=(0.0, 2.0))
    alpha = 1.5
    seg = make_uniform_random(12, 1, 0.8, RngStream(8, 1))
    grid = np.linspace(-1, 1, 10**4)[:, None]
    h = 2.0 / (10**4 - 1)
    for n in range(1, 11):
        En = propagate_ensemble(sys, alpha, seg.last(n), grid)
        En1 = propagate_ensemble(sys, alpha, seg.last(n + 1), grid)
        assert directed_distance(En1, En) <= h * alpha**n + 1e-9


def test_non_finite_reports_alpha():
    bad = FunctionSystem(lambda a, u, X: X * np.nan, 1)
    with pytest.raises(NumericError, match="alpha=0.5"):
        propagate_ensemble(bad, 0.5, make_sinusoid(3), np.zeros((2, 1)))


def test_dimension_errors(res10):
    with pytest.raises(DimensionError):
        propagate_ensemble(res10, 1.0, make_sinusoid(3, d=2), np.zeros((2, 10)))
    with pytest.raises(DimensionError):
        propagate_ensemble(res10, 1.0, make_sinusoid(3), np.zeros((2, 9)))


def test_run_trajectory_manual_steps():
    sys = ScalarTanhSystem(0.7, 1.0, param_range=(0.0, 2.0))
    seg = InputSegment(np.array([[0.2], [-0.4], [0.9]]))
    tr = run_trajectory(sys, 0.6, seg, [0.1], readout_w=[2.0])
    x = 0.1
    expected = [x]
    for u in (0.2, -0.4, 0.9):
        x = math.tanh(0.7 * u + 0.6 * x)
        expected.append(x)
    np.testing.assert_allclose(tr.states[:, 0], expected, rtol=0, atol=1e-15)
    np.testing.assert_allclose(tr.readout, 2 * np.array(expected), rtol=0, atol=1e-15)
    assert len(tr) == 4


def test_run_trajectory_trivial_cases(res10):
    seg = make_sinusoid(20)
    tr = run_trajectory(res10, 1.0, seg, np.zeros(10), readout_w=np.zeros(10))
    assert np.all(tr.readout == 0)
    x0 = np.linspace(-1, 1, 3)
    tr = run_trajectory(IdentitySystem(3), 1.0, seg, x0)
    assert np.all(tr.states == x0) and tr.readout is None


def test_ensemble_csv_round_trip(tmp_path, res10):
    S = encoding_approximation(res10, 1.0, make_sinusoid(10), 15, "interior", RngStream(9))
    path = tmp_path / "ens.csv"
    S.to_csv(path)
    assert path.read_text().startswith("#")
    back = StateEnsemble.from_csv(path)
    assert np.array_equal(back.points, S.points)
    assert back.provenance.steps == 10 and back.provenance.alpha == 1.0
    assert hausdorff_distance(back, S) == 0.0
