import numpy as np
import pytest

from stages.stage_1.model import MonitorOperator, MonitorSpec, monitored_operators, preset
from stages.stage_1.monitoring import (
    NoiseStream,
    apply_kraus_factors,
    draw_noise,
    euler_maruyama_layer,
    homodyne_layer,
    measurement_layer,
)
from stages.stage_1.state import StateVector, expectation, half_chain_entropy
from conftest import random_product, random_state


def test_noise_increments_have_variance_gamma_dt():
    noise = NoiseStream(master_seed=0, traj_index=0, gamma=0.1, dt=0.05)
    draws = np.stack([noise.increments(k, 1000) for k in range(1000)])
    n = draws.size
    assert abs(draws.mean()) < 5 * np.sqrt(noise.variance / n)
    assert draws.var() == pytest.approx(noise.variance, rel=0.02)


def test_noise_is_a_pure_function_of_its_coordinates():
    a = NoiseStream(42, 3, 0.2, 0.01)
    b = NoiseStream(42, 3, 0.2, 0.01)
    np.testing.assert_array_equal(a.increments(17, 6), b.increments(17, 6))
    # later calls do not depend on earlier ones
    b.increments(5, 100)
    np.testing.assert_array_equal(a.increments(17, 6), b.increments(17, 6))
    # scalar draws are a prefix of the vector draw
    assert draw_noise(a, 17, 4) == a.increments(17, 6)[4]
    assert not np.array_equal(a.increments(17, 6), NoiseStream(42, 4, 0.2, 0.01).increments(17, 6))
    assert not np.array_equal(a.increments(17, 6), a.increments(18, 6))
    with pytest.raises(ValueError):
        draw_noise(a, -1, 0)


def test_zero_rate_layer_is_identity():
    psi = random_state(4, 1)
    before = psi.amplitudes.copy()
    ops = monitored_operators(preset("XX", 4), MonitorSpec("single-site", "z"))
    out = homodyne_layer(psi, ops, NoiseStream(0, 0, 0.0, 0.1), 0)
    np.testing.assert_array_equal(out.amplitudes, before)


def test_layer_requires_normalized_state():
    ops = [MonitorOperator("z", (0,))]
    psi = StateVector(2, np.array([1.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError, match="normalized"):
        homodyne_layer(psi, ops, NoiseStream(0, 0, 0.1, 0.1), 0)


@pytest.mark.parametrize("label", ["z", "zz", "x", "xx", "yy"])
def test_layer_preserves_norm(label):
    ops = monitored_operators(preset("XX", 6), MonitorSpec.from_label(label, 1.0))
    psi = random_state(6, 3)
    for k in range(20):
        psi = homodyne_layer(psi, ops, NoiseStream(1, 0, 1.0, 0.05), k)
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)


def test_kraus_factors_commute():
    ops = monitored_operators(preset("XY", 6), MonitorSpec("bond", "x"))
    coefficients = np.random.default_rng(4).normal(0, 0.3, len(ops))
    psi = random_state(6, 5)
    forward = apply_kraus_factors(psi.copy(), ops, coefficients).normalize()
    backward = apply_kraus_factors(psi.copy(), ops[::-1], coefficients[::-1]).normalize()
    np.testing.assert_allclose(forward.amplitudes, backward.amplitudes, atol=1e-12)


def test_schemes_agree_to_first_order():
    L = 6
    ops = monitored_operators(preset("XX", L), MonitorSpec("single-site", "z"))
    psi0 = random_product(L, 6)
    dts = np.array([1e-2, 5e-3, 2.5e-3])
    mean_infidelity = []
    for dt in dts:
        # same standard normals at every dt, scaled by √(γ dt)
        noise = NoiseStream(9, 0, 1.0, dt)
        vals = []
        for k in range(20):
            a = homodyne_layer(psi0.copy(), ops, noise, k)
            b = euler_maruyama_layer(psi0.copy(), ops, noise, k)
            vals.append(1.0 - abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
        mean_infidelity.append(np.mean(vals))
    order = np.polyfit(np.log(dts), np.log(mean_infidelity), 1)[0]
    assert order >= 1.8


def test_strong_monitoring_collapses_onto_an_eigenstate():
    ops = [MonitorOperator("z", (0,))]
    psi = random_product(2, 7)
    noise = NoiseStream(3, 0, 10.0, 0.01)
    for k in range(2000):
        psi = homodyne_layer(psi, ops, noise, k)
    assert abs(expectation(psi, ops[0])) > 0.99


def test_unknown_scheme():
    assert measurement_layer("exponentiated") is homodyne_layer
    assert measurement_layer("euler-maruyama") is euler_maruyama_layer
    with pytest.raises(ValueError):
        measurement_layer("milstein")


def test_two_site_update_matches_closed_form():
    ops = [MonitorOperator("z", (0,))]
    superposed = np.array([1, 1, 0, 0], dtype=complex) / np.sqrt(2)     # site 0 in (↑+↓)/√2, site 1 ↑
    for c in (-0.7, 0.0, 0.3, 2.0):
        got = apply_kraus_factors(StateVector(2, superposed.copy()), ops, [c]).normalize()
        expected = np.array([np.exp(c), np.exp(-c), 0, 0]) / np.sqrt(np.exp(2 * c) + np.exp(-2 * c))
        np.testing.assert_allclose(got.amplitudes, expected, atol=1e-14)

    # ⟨σ^z_0⟩ = 0, so the layer's coefficient is the bare increment
    noise = NoiseStream(master_seed=3, traj_index=0, gamma=0.5, dt=0.1)
    c = draw_noise(noise, 4, 0)
    got = homodyne_layer(StateVector(2, superposed.copy()), ops, noise, 4)
    expected = np.array([np.exp(c), np.exp(-c), 0, 0]) / np.sqrt(np.exp(2 * c) + np.exp(-2 * c))
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-14)


@pytest.mark.parametrize("label, amplitudes", [
    ("z", np.eye(16)[0]),                        # all up
    ("zz", np.eye(16)[0]),
    ("x", np.full(16, 0.25)),                    # all +x
    ("xx", np.full(16, 0.25)),
])
def test_common_eigenstates_are_fixed_points(label, amplitudes):
    L = 4
    ops = monitored_operators(preset("XX", L), MonitorSpec.from_label(label, 0.2))
    noise = NoiseStream(master_seed=1, traj_index=2, gamma=0.2, dt=0.05)
    psi = StateVector(L, amplitudes.astype(complex))
    for k in range(20):
        psi = homodyne_layer(psi, ops, noise, k)
        np.testing.assert_allclose(psi.amplitudes, amplitudes, atol=1e-14)


def test_measurement_alone_purifies_the_half_chain():
    L, gamma, dt = 6, 1.0, 0.05
    ops = monitored_operators(preset("XX", L), MonitorSpec("single-site", "z", gamma))
    entropies = []
    for traj in range(8):
        noise = NoiseStream(master_seed=11, traj_index=traj, gamma=gamma, dt=dt)
        psi = random_state(L, traj)
        for k in range(round(20 / gamma / dt)):
            psi = homodyne_layer(psi, ops, noise, k)
        entropies.append(half_chain_entropy(psi))
    assert np.mean(entropies) < 0.05
