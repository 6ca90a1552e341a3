import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonqc.errors import LayoutMismatch, TruncationExceeded, ZeroProbabilityBranch
from photonqc.fock_core import (
    H, V, DensityOperator, ModeLayout, PureState, TruncationConfig, annihilate, create, fock_basis,
    inner_product, monomial, number_expectation, photon_distribution, post_select, post_select_many,
    project, sample_photon_numbers, tensor, threshold_detect,
)

AB = ModeLayout.of("ab")


def test_layout_orders_polarizations_within_each_spatial_mode():
    lay = ModeLayout.of("ab", polarized=True)
    assert lay.mode_count == 4
    assert [lay.index(s, p) for s in "ab" for p in (H, V)] == [0, 1, 2, 3]
    assert lay.spatial_names == ("a", "b")
    assert ModeLayout.from_json(lay.to_json()) == lay


def test_create_then_annihilate_gives_number_operator():
    psi = PureState.basis(AB, (2, 1), truncation=TruncationConfig(3, 4))
    out = annihilate(create(psi, 0), 0)
    assert out.amplitude((2, 1)) == pytest.approx(3.0)
    assert annihilate(PureState.vacuum(AB), 0).is_zero


def test_canonical_commutator_on_basis_states():
    for occ in [(0, 0), (1, 0), (1, 2), (3, 0)]:
        psi = PureState.basis(AB, occ, truncation=TruncationConfig(5, 6))
        comm = annihilate(create(psi, 0), 0) - create(annihilate(psi, 0), 0)
        assert comm.max_abs_diff(psi) < 1e-14


def test_creation_past_truncation_raises():
    psi = PureState.basis(AB, (2, 0))
    with pytest.raises(TruncationExceeded):
        create(psi, 0)


def test_layout_mismatch():
    with pytest.raises(LayoutMismatch):
        inner_product(PureState.vacuum(AB), PureState.vacuum(ModeLayout.of("abc")))
    with pytest.raises(LayoutMismatch):
        PureState(AB, {(1, 0, 0): 1.0})


def test_monomial_matches_fock_normalization():
    psi = monomial(AB, [0, 0, 1])
    assert psi.amplitude((2, 1)) == pytest.approx(math.sqrt(2))
    assert number_expectation(psi.normalized(), 0) == pytest.approx(2.0)


def test_project_and_post_select():
    psi = (PureState.basis(AB, (1, 0)) + PureState.basis(AB, (0, 1)) * 1j).scaled(1 / math.sqrt(2))
    rest = project(psi, 1, 1)
    assert rest.layout.mode_count == 1
    assert rest.amplitude((0,)) == pytest.approx(1j / math.sqrt(2))
    cond, p = post_select(psi, 0, 1)
    assert p == pytest.approx(0.5)
    assert cond.norm2 == pytest.approx(1.0)
    with pytest.raises(ZeroProbabilityBranch):
        post_select(psi, 0, 2)


def test_post_select_many_removes_highest_index_first():
    lay = ModeLayout.of("abc")
    psi = PureState.basis(lay, (1, 0, 1))
    cond, p = post_select_many(psi, [0, 2], [1, 1])
    assert p == pytest.approx(1.0)
    assert cond.layout.spatial_names == ("b",)


def test_photon_distribution_sums_to_one_and_sampling_is_seeded():
    psi = (PureState.basis(AB, (2, 0)) + PureState.basis(AB, (1, 1)) + PureState.basis(AB, (0, 2))).normalized()
    dist = photon_distribution(psi, [0])
    assert sum(dist.values()) == pytest.approx(1.0)
    a = sample_photon_numbers(psi, [0], np.random.default_rng(5))
    b = sample_photon_numbers(psi, [0], np.random.default_rng(5))
    assert a[0] == b[0] and a[2] == b[2]


def test_tensor_and_json_round_trip():
    a = PureState.basis(ModeLayout.of("a"), (1,))
    b = PureState.basis(ModeLayout.of("b"), (2,), amplitude=0.5j)
    t = tensor(a, b)
    assert t.layout == AB
    assert t.amplitude((1, 2)) == pytest.approx(0.5j)
    assert PureState.from_json(t.to_json()).max_abs_diff(t) == 0


def test_fock_basis_sizes():
    assert len(fock_basis(4, 2)) == 15
    assert len(fock_basis(2, 2, total=2)) == 3
    assert fock_basis(2, 1)[0] == (0, 0)


def test_threshold_detection_of_single_photon():
    basis = fock_basis(2, 1)
    rho = DensityOperator.from_vector(basis, np.array([0, 1, 0]))  # one photon in mode 0
    (off_label, _, p_off), (on_label, cond, p_on) = threshold_detect(rho, [0], 0.3)
    assert (off_label, on_label) == ("no-click", "click")
    assert p_on == pytest.approx(0.3) and p_off == pytest.approx(0.7)
    assert cond.population((0,)) == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=6, max_size=6))
def test_inner_product_is_hermitian_and_norm_positive(amps):
    basis = fock_basis(2, 2)
    a = PureState(AB, dict(zip(basis, amps)))
    b = PureState(AB, dict(zip(basis, amps[::-1])))
    assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)), abs=1e-9)
    assert inner_product(a, a).real >= 0
    assert abs(inner_product(a, a) - a.norm2) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 1), st.integers(0, 2))
def test_threshold_detection_is_trace_preserving(eta, n):
    basis = fock_basis(2, 2)
    vec = np.zeros(len(basis))
    vec[basis.index((n, 2 - n))] = 1
    rho = DensityOperator.from_vector(basis, vec)
    branches = threshold_detect(rho, [0], eta)
    assert sum(p for _, _, p in branches) == pytest.approx(1.0)
    assert branches[0][2] == pytest.approx((1 - eta) ** n)
