import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonqc import zeno_gate as zg


def test_step_matches_single_photon_and_pair_rules():
    th = 0.3
    u = zg.step_unitary(th)
    idx = {b: i for i, b in enumerate(zg.BASIS)}
    col01 = u[:, idx[(0, 1)]]
    assert col01[idx[(0, 1)]] == pytest.approx(math.cos(th))
    assert col01[idx[(1, 0)]] == pytest.approx(1j * math.sin(th))
    col11 = u[:, idx[(1, 1)]]
    assert col11[idx[(1, 1)]] == pytest.approx(math.cos(2 * th))
    assert col11[idx[(2, 0)]] == pytest.approx(1j * math.sin(2 * th) / math.sqrt(2))
    assert col11[idx[(0, 2)]] == pytest.approx(1j * math.sin(2 * th) / math.sqrt(2))
    assert u[idx[(0, 0)], idx[(0, 0)]] == 1


def test_zero_angle_is_identity():
    np.testing.assert_allclose(zg.step_unitary(0.0), np.eye(zg.DIM), atol=1e-15)


def test_one_step_then_absorb_on_pair():
    th = 0.2
    rho = zg.bs_step(zg.TwoModeDensity.pure((1, 1)), th)
    assert rho.population((1, 1)) == pytest.approx(math.cos(2 * th) ** 2)
    assert rho.population((2, 0)) == pytest.approx(math.sin(2 * th) ** 2 / 2)
    out = zg.absorb(rho)
    assert out.population((1, 1)) == pytest.approx(math.cos(2 * th) ** 2)
    assert out.population((0, 0)) == pytest.approx(math.sin(2 * th) ** 2)
    assert abs(out.matrix[0, 3]) < 1e-15


def test_absorber_is_identity_below_two_photons():
    rng = np.random.default_rng(1)
    v = np.zeros(zg.DIM, dtype=complex)
    v[:4] = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = zg.TwoModeDensity.pure(v / np.linalg.norm(v))
    np.testing.assert_allclose(zg.absorb(rho).matrix, rho.matrix, atol=1e-15)


def test_kraus_completeness_exact():
    assert zg.kraus_completeness_error(zg.single_mode_kraus()) == 0.0
    assert zg.kraus_completeness_error(zg.single_mode_kraus(0.8, 0.1)) < 1e-15


def test_single_photon_swaps_with_phase_i():
    for n in (1, 3, 50):
        rho = zg.zeno_evolve(zg.TwoModeDensity.pure((0, 1)), zg.ZenoConfig(n))
        target = np.zeros(zg.DIM, dtype=complex)
        target[zg.BASIS.index((1, 0))] = 1j
        assert np.abs(rho.matrix - np.outer(target, target.conj())).max() < 1e-12
        assert rho.purity == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 10, 100])
def test_survival_closed_form_vs_iteration(n):
    cfg = zg.ZenoConfig(n)
    rho0 = zg.TwoModeDensity.pure((1, 1))
    assert zg.zeno_evolve(rho0, cfg).population((1, 1)) == pytest.approx(zg.survival_closed_form(n), abs=1e-10)
    assert zg.zeno_evolve_iterated(rho0, cfg).population((1, 1)) == pytest.approx(zg.survival_closed_form(n), abs=1e-10)


def test_large_n_survival():
    n = 10_000
    s = zg.zeno_evolve(zg.TwoModeDensity.pure((1, 1)), zg.ZenoConfig(n)).population((1, 1))
    assert s >= 0.999
    assert s >= 1 - math.pi ** 2 / n - 1e-12


def test_loss_decreases_with_n():
    losses = [zg.two_photon_loss(n) for n in range(4, 200)]
    assert all(a > b for a, b in zip(losses, losses[1:]))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2 ** 32 - 1))
def test_trace_and_positivity_preserved(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(zg.DIM, zg.DIM)) + 1j * rng.normal(size=(zg.DIM, zg.DIM))
    rho = zg.TwoModeDensity(m @ m.conj().T / np.trace(m @ m.conj().T))
    cfg = zg.ZenoConfig(n)
    for _ in range(n):
        rho = zg.absorb(zg.bs_step(rho, cfg.theta))
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        rho.check()


def test_vacuum_unchanged():
    rho = zg.zeno_evolve(zg.TwoModeDensity.pure((0, 0)), zg.ZenoConfig(7))
    assert rho.population((0, 0)) == pytest.approx(1.0)


@pytest.mark.parametrize("n", [3, 10, 100, 10_000])
def test_process_fidelity_matches_closed_form(n):
    rep = zg.effective_gate(zg.ZenoConfig(n))
    assert rep.process_fidelity == pytest.approx(zg.ideal_process_fidelity(n), abs=1e-9)
    assert rep.zeno_fidelity == pytest.approx(rep.process_fidelity, abs=1e-12)


def test_large_n_gate_is_cz():
    rep = zg.effective_gate(zg.ZenoConfig(10_000))
    assert rep.process_fidelity >= 0.999
    assert rep.to_json()["n"] == 10_000


def test_phase_correction_turns_zeno_gate_into_cz():
    from photonqc.qubits import CZ

    np.testing.assert_allclose(zg.PHASE_CORRECTION @ zg.U_ZENO, CZ, atol=1e-15)


def test_non_ideal_absorber_leaks():
    cfg = zg.ZenoConfig(50, two_photon_efficiency=0.9, single_photon_loss=0.01)
    rho = zg.zeno_evolve(zg.TwoModeDensity.pure((0, 1)), cfg)
    assert rho.trace == pytest.approx(1.0, abs=1e-12)
    assert rho.population((1, 0)) < 0.9


def test_config_validation():
    with pytest.raises(ValueError):
        zg.ZenoConfig(0)
    assert zg.ZenoConfig(8).theta * 8 == pytest.approx(math.pi / 2)
