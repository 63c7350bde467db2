import math

import numpy as np
import pytest

from qibench.gaussian import (
    GaussianState,
    added_photons_from_gain,
    amplified_source,
    apply_amplifier,
    apply_beamsplitter,
    is_physical,
    make_coherent,
    make_thermal,
    symplectic_eigenvalues,
    symplectic_form,
    williamson,
)


def test_symplectic_form_invariants():
    for modes in (1, 2, 3):
        omega = symplectic_form(modes)
        assert np.array_equal(omega @ omega, -np.eye(2 * modes))
        assert np.array_equal(omega.T, -omega)


@pytest.mark.parametrize(
    "n_s, mean_q",
    [(0.0, 0.0), (1e-2, math.sqrt(0.02)), (2.0, 2.0)],
)
def test_make_coherent(n_s, mean_q):
    state = make_coherent(n_s)
    assert state.mean == pytest.approx([mean_q, 0.0], abs=1e-15)
    assert np.allclose(state.cov, 0.5 * np.eye(2))
    assert state.mean_photons() == pytest.approx(n_s, abs=1e-12)


@pytest.mark.parametrize("n_bar, variance", [(0.0, 0.5), (6250.0, 6250.5), (0.5, 1.0)])
def test_make_thermal(n_bar, variance):
    state = make_thermal(n_bar)
    assert np.allclose(state.mean, 0.0)
    assert np.allclose(state.cov, variance * np.eye(2))


def test_negative_photon_numbers_rejected():
    with pytest.raises(ValueError):
        make_coherent(-1e-3)
    with pytest.raises(ValueError):
        make_thermal(-0.1)


def test_state_validation():
    with pytest.raises(ValueError):
        GaussianState(1, np.zeros(3), 0.5 * np.eye(2))
    asym = np.array([[1.0, 0.1], [0.0, 1.0]])
    with pytest.raises(ValueError):
        GaussianState(1, np.zeros(2), asym)


def test_amplifier_identity_at_unit_gain():
    state = make_coherent(0.3)
    for rescale in (True, False):
        out = apply_amplifier(state, 1.0, rescale_input=rescale)
        assert np.allclose(out.mean, state.mean)
        assert np.allclose(out.cov, state.cov)


def test_amplifier_quadrature_map_on_vacuum():
    # oracle: Var(sqrt(g) x + sqrt(g-1) x_A) = g/2 + (g-1)/2 on vacuum inputs
    gain = 2.0
    expected = gain * 0.5 + (gain - 1.0) * 0.5
    out = apply_amplifier(make_thermal(0.0), gain, rescale_input=False)
    assert np.allclose(out.cov, expected * np.eye(2))
    assert np.allclose(out.mean, 0.0)


def test_amplifier_rescaled_adds_half_gain_noise():
    state = make_coherent(1e-2)
    out = apply_amplifier(state, 3.0, rescale_input=True)
    assert np.allclose(out.mean, state.mean)
    assert np.allclose(out.cov, (0.5 + 1.0) * np.eye(2))


def test_amplified_source_matches_benchmark_convention():
    source = amplified_source(1e-2, 6250.0)
    assert source.mean == pytest.approx([math.sqrt(0.02), 0.0])
    assert np.allclose(source.cov, 6250.0 * np.eye(2))


def test_amplifier_domain_errors():
    with pytest.raises(ValueError):
        apply_amplifier(make_coherent(0.1), 0.9)
    with pytest.raises(ValueError):
        amplified_source(0.1, 0.2)
    assert added_photons_from_gain(1.0, 6250.0) == 6250.5
    with pytest.raises(ValueError):
        added_photons_from_gain(0.5, 1.0)


def test_beamsplitter_endpoints():
    state = make_coherent(0.7)
    env = make_thermal(3.0)
    out1 = apply_beamsplitter(state, 1.0, env)
    assert np.allclose(out1.mean, state.mean) and np.allclose(out1.cov, state.cov)
    out0 = apply_beamsplitter(state, 0.0, env)
    assert np.allclose(out0.mean, env.mean) and np.allclose(out0.cov, env.cov)
    with pytest.raises(ValueError):
        apply_beamsplitter(state, 1.2, env)


def test_beamsplitter_on_amplified_source():
    # oracle: direct affine map tau*cov + (1-tau)*cov_env on the N_A*I source
    eta, n_a, n_b = 1e-2, 6250.0, 6250.0
    out = apply_beamsplitter(
        amplified_source(1e-2, n_a), eta, make_thermal(n_b / (1.0 - eta))
    )
    expected = eta * n_a + (1.0 - eta) * (n_b / (1.0 - eta) + 0.5)
    assert np.allclose(out.cov, expected * np.eye(2), rtol=1e-14)
    assert out.mean[0] == pytest.approx(math.sqrt(2.0 * eta * 1e-2), rel=1e-14)


def test_source_chain_reproduces_return_state():
    # coherent -> amplifier adding N_A -> beamsplitter against N_B/(1-eta)
    # must land on mean (sqrt(2 eta N_S), 0) and cov (1/2 + eta N_A + N_B) I
    n_s, n_a, n_b, eta = 1e-2, 6250.0, 6250.0, 1e-2
    source = apply_amplifier(make_coherent(n_s), gain=1.0 + 2.0 * n_a, rescale_input=True)
    out = apply_beamsplitter(source, eta, make_thermal(n_b / (1.0 - eta)))
    expected_cov = (0.5 + eta * n_a + n_b) * np.eye(2)
    assert np.abs(out.cov - expected_cov).max() / expected_cov.max() < 1e-12
    assert out.mean[0] == pytest.approx(math.sqrt(2.0 * eta * n_s), rel=1e-12)
    assert out.cov[0, 0] == pytest.approx(6313.0, rel=1e-12)


def test_beamsplitter_energy_bookkeeping(rng):
    for _ in range(25):
        n_state = float(rng.uniform(0.0, 5.0))
        n_env = float(rng.uniform(0.0, 5.0))
        tau = float(rng.uniform(0.0, 1.0))
        out = apply_beamsplitter(make_thermal(n_state), tau, make_thermal(n_env))
        expected = tau * n_state + (1.0 - tau) * n_env
        assert out.mean_photons() == pytest.approx(expected, abs=1e-12)


def test_williamson_isotropic():
    dec = williamson(6250.5 * np.eye(2))
    assert np.allclose(dec.S, np.eye(2), atol=1e-12)
    assert dec.nus == pytest.approx([6250.5])
    assert dec.physical


def test_williamson_squeezed_is_pure():
    r = 0.7
    cov = 0.5 * np.diag([math.exp(r), math.exp(-r)])
    dec = williamson(cov)
    assert dec.nus == pytest.approx([0.5], rel=1e-12)
    assert np.allclose(dec.S, np.diag([math.exp(r / 2), math.exp(-r / 2)]), atol=1e-10)


def test_williamson_reconstruction_property(rng, random_cov):
    worst_recon = worst_sympl = 0.0
    for _ in range(200):
        modes = int(rng.integers(1, 4))
        cov = random_cov(rng, modes)
        dec = williamson(cov)
        omega = symplectic_form(modes)
        recon = np.linalg.norm(dec.S @ dec.diagonal_form() @ dec.S.T - cov) / np.linalg.norm(cov)
        sympl = np.abs(dec.S @ omega @ dec.S.T - omega).max()
        worst_recon = max(worst_recon, recon)
        worst_sympl = max(worst_sympl, sympl)
    assert worst_recon < 1e-10
    assert worst_sympl < 1e-10


def test_williamson_input_validation():
    with pytest.raises(ValueError):
        williamson(np.array([[1.0, 0.2], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        williamson(np.diag([1.0, -0.5]))
    dec = williamson(0.25 * np.eye(2))
    assert not dec.physical


def test_is_physical():
    ok, nu_min = is_physical(make_thermal(0.0))
    assert ok and nu_min == pytest.approx(0.5)
    sub_vacuum = GaussianState(1, np.zeros(2), 0.25 * np.eye(2))
    ok, nu_min = is_physical(sub_vacuum)
    assert not ok and nu_min == pytest.approx(0.25)
    ok, nu_min = is_physical(make_thermal(6250.0))
    assert ok and nu_min == pytest.approx(6250.5)


def test_symplectic_eigenvalues_multimode(rng, random_cov):
    cov = random_cov(rng, 3)
    nus = symplectic_eigenvalues(cov)
    dec = williamson(cov)
    assert nus == pytest.approx(dec.nus, rel=1e-10)
