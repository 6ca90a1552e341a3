import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonqc import double_heralding as dh
from photonqc.seeding import trial_generators

etas = st.floats(0.05, 1.0)


def test_success_probability_is_half_eta_squared():
    for eta in (0.2, 0.6, 1.0):
        assert dh.success_probability(eta) == pytest.approx(eta ** 2 / 2, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(etas)
def test_round_one_entangled_weight(eta):
    assert dh.round_one_f(eta, +1) == pytest.approx(2 / (4 - eta), abs=1e-12)
    assert dh.round_one_f(eta, -1) == pytest.approx(dh.single_click_f(eta), abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(etas)
def test_round_one_support(eta):
    assert dh.round_one_support_error(eta) < 1e-12


def test_round_two_clicks_come_only_from_the_entangled_part():
    sources = dh.round_two_click_sources(0.7)
    sep = sources["separable"]
    assert sep[(1, 0)] == pytest.approx(0, abs=1e-15) and sep[(0, 1)] == pytest.approx(0, abs=1e-15)
    assert sources["entangled"][(1, 1)] == pytest.approx(0, abs=1e-15)


def test_branch_probabilities_sum_to_one():
    branches = dh.herald_branches(np.full(4, 0.5), 0.4)
    assert sum(b.probability for b in branches) == pytest.approx(1.0)
    both = next(b for b in branches if b.signature == (1, 1))
    assert both.probability == pytest.approx(0.0, abs=1e-15)


def test_successful_output_is_bell_state():
    for eta in (0.3, 1.0):
        for b in dh.protocol_branches(eta):
            assert b.fidelity == pytest.approx(1.0, abs=1e-10)


def test_conditional_map_is_parity_projector():
    rng = np.random.default_rng(8)
    for _ in range(5):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        report = dh.projector_check(psi)
        assert set(report) == {1, -1}
        for entry in report.values():
            assert entry["fidelity"] == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=10, deadline=None)
@given(st.floats(-math.pi, math.pi))
def test_common_phase_is_harmless(delta):
    assert dh.phase_robustness(delta) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("d1,d2", [(0.0, 0.7), (0.3, -1.1), (1.0, 1.0)])
def test_independent_phases_reduce_fidelity(d1, d2):
    assert dh.phase_robustness(d1, delta_second=d2) == pytest.approx(math.cos((d1 - d2) / 2) ** 2, abs=1e-10)


def test_distinguishability_lowers_fidelity_monotonically():
    fids = [dh.mean_success_fidelity(1.0, ov) for ov in (0.0, 0.3, 0.7, 1.0)]
    assert fids[0] == pytest.approx(0.5, abs=1e-10)
    assert fids[-1] == pytest.approx(1.0, abs=1e-10)
    assert all(a < b for a, b in zip(fids, fids[1:]))


def test_density_operators_stay_physical():
    joint = dh.interfere(dh.pi_pulse_emit(np.full(4, 0.5), dh.DistinguishabilityModel(0.6), 0.3))
    joint.check()
    assert joint.trace == pytest.approx(1.0)


def test_monte_carlo_is_seeded_and_unbiased():
    a = dh.simulate(0.6, 1.0, 2000, seed=5)
    b = dh.simulate(0.6, 1.0, 2000, seed=5)
    assert a == b
    p = 0.18
    assert abs(a.success_rate - p) <= 3 * math.sqrt(p * (1 - p) / 2000)


def test_trial_streams_are_independent_of_trial_count():
    first = [g.random() for g in trial_generators(3, 5)]
    again = [g.random() for g in trial_generators(3, 8)][:5]
    assert first == again


def test_overlap_validation():
    with pytest.raises(ValueError):
        dh.DistinguishabilityModel(1.5)
