import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from esplab import (
    DimensionError,
    DomainError,
    IdentitySystem,
    LengthError,
    ParameterError,
    ReservoirSystem,
    RngStream,
    ScalarTanhSystem,
    add_noise,
    make_sinusoid,
    make_uniform_random,
    sample_states,
    shift_input,
    spectral_radius,
)


@pytest.fixture(scope="module")
def small():
    return ReservoirSystem.random(5, 2, RngStream(3, 0))


def test_reservoir_is_normalized(small):
    assert abs(spectral_radius(small.B) - 1.0) <= 1e-6


def test_zero_alpha_ignores_state(small):
    wide = ReservoirSystem(small.A, small.B, param_range=(0.0, 2.0))
    u = np.array([0.3, -0.2])
    for x in (np.zeros(5), np.ones(5), -np.ones(5)):
        np.testing.assert_array_equal(wide.step(0.0, u, x), np.tanh(small.A @ u))
    with pytest.raises(ParameterError):
        small.step(0.0, u, np.zeros(5))


def test_step_matches_formula(small):
    u, x = np.array([0.1, 0.4]), np.linspace(-1, 1, 5)
    np.testing.assert_allclose(small.step(0.8, u, x), np.tanh(small.A @ u + 0.8 * small.B @ x), atol=1e-15)


def test_identity_and_scalar_examples():
    x = np.array([0.2, -0.7])
    assert np.array_equal(IdentitySystem(2).step(1.3, [0.5], x), x)
    assert ScalarTanhSystem(1.0, 1.0).step(0.5, [0.0], [0.8])[0] == pytest.approx(np.tanh(0.4), abs=1e-15)


def test_step_validation(small):
    with pytest.raises(ParameterError):
        small.step(2.5, [0.0, 0.0], np.zeros(5))
    with pytest.raises(DimensionError):
        small.step(0.5, [0.0], np.zeros(5))
    with pytest.raises(DimensionError):
        small.step(0.5, [0.0, 0.0], np.zeros(4))
    with pytest.raises(DomainError):
        small.step(0.5, [np.nan, 0.0], np.zeros(5))
    with pytest.raises(DomainError):
        small.step(0.5, [0.0, 0.0], np.full(5, 1.5))


def test_step_batch_matches_step(small):
    X = sample_states(7, 5, "interior", RngStream(1)).points
    u = np.array([0.2, 0.1])
    batch = small.step_batch(0.9, u, X)
    for i in range(7):
        np.testing.assert_allclose(batch[i], small.step(0.9, u, X[i]), atol=1e-15)


def test_state_box_is_invariant(small):
    gen = RngStream(8).generator()
    X = gen.uniform(-1, 1, (10_000, 5))
    U = gen.uniform(-1, 1, 2)
    Y = small.step_batch(1.7, U, X)
    assert np.all(np.abs(Y) <= 1.0)


def test_lipschitz_bound_holds(small):
    gen = RngStream(9).generator()
    u = gen.uniform(-1, 1, 2)
    for alpha in (0.1, 0.5, 1.5):
        L = small.lipschitz_constant(alpha)
        x, y = gen.uniform(-1, 1, (2, 5))
        gap = np.linalg.norm(small.step(alpha, u, x) - small.step(alpha, u, y))
        assert gap <= L * np.linalg.norm(x - y) + 1e-12
    assert small.has_global_contraction(0.5 / small.sigma_max)
    assert not small.has_global_contraction(1.0 / small.sigma_max)


def test_sinusoid_closed_form():
    seg = make_sinusoid(200, d=2, amplitude=0.5, period=50.0)
    k = np.arange(-200, 0)
    np.testing.assert_allclose(seg.values[:, 0], 0.5 * np.sin(2 * np.pi * k / 50), atol=1e-15)
    assert np.array_equal(seg.values[:, 0], seg.values[:, 1])
    assert seg.values.shape == (200, 2)
    # integer times never reach the crest k = 12.5 + 50 m; the closest is k = 12
    peak = np.max(np.abs(make_sinusoid(5000).values))
    assert peak == pytest.approx(0.5 * np.sin(2 * np.pi * 12 / 50), abs=1e-12)
    assert peak <= 0.5


def test_quarter_period_values():
    seg = make_sinusoid(4, amplitude=1.0, period=4.0)
    expected = np.sin(np.array([-2, -1.5, -1, -0.5]) * np.pi)
    np.testing.assert_allclose(seg.values[:, 0], expected, atol=1e-15)


def test_uniform_input_statistics():
    seg = make_uniform_random(10**5, 1, 1.0, RngStream(2, 1))
    assert abs(seg.values.mean()) < 0.01
    assert np.max(np.abs(seg.values)) <= 1.0
    again = make_uniform_random(10**5, 1, 1.0, RngStream(2, 1))
    assert np.array_equal(seg.values, again.values)


def test_noise_is_bounded_and_scales():
    seg = make_sinusoid(500)
    a = add_noise(seg, 1e-3, RngStream(4, 3))
    b = add_noise(seg, 2e-3, RngStream(4, 3))
    assert np.max(np.abs(a.values - seg.values)) <= 1e-3
    np.testing.assert_allclose(b.values - seg.values, 2 * (a.values - seg.values), atol=1e-15)
    assert add_noise(seg, 0.0) is seg
    with pytest.raises(DomainError):
        add_noise(seg, -1.0)


def test_shift_examples():
    seg = make_uniform_random(500, 1, 1.0, RngStream(0, 1))
    out = shift_input(seg, 80)
    assert len(out) == 420
    assert out.values[-1, 0] == seg.values[-81, 0]
    assert shift_input(seg, 0) is seg
    with pytest.raises(LengthError):
        shift_input(seg, 500)
    with pytest.raises(LengthError):
        shift_input(seg, -1)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 40), st.integers(0, 40))
def test_shift_is_additive(i, j):
    seg = make_sinusoid(100)
    assert np.array_equal(shift_input(shift_input(seg, i), j).values, shift_input(seg, i + j).values)


def test_last_values():
    seg = make_sinusoid(30)
    assert np.array_equal(seg.last(5).values, seg.values[-5:])
    with pytest.raises(LengthError):
        seg.last(31)
    assert seg.times[0] == -30 and seg.times[-1] == -1
