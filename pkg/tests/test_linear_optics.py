import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonqc.errors import InvalidEncoding, InvalidSpec, NotUnitary, PhotonNumberMismatch, TruncationExceeded
from photonqc.fock_core import ModeLayout, PureState, TruncationConfig, fock_basis
from photonqc.linear_optics import (
    ElementSpec, ModeUnitary, amplitude_oracle, apply_circuit, apply_interferometer, beam_splitter,
    beam_splitter_hamiltonian, circuit_unitary, dual_rail_to_polarization, element_matrix, fifty_fifty,
    haar_unitary, heisenberg_mode_matrix, interferometer_matrix, mirror, pbs, phase, polarization_rotation,
    reck_decompose, rotate_45,
)

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


def test_fifty_fifty_matrix():
    u = circuit_unitary(fifty_fifty(0, 1), 2).matrix
    np.testing.assert_allclose(u, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)


def test_rotate_45_maps_h_to_diagonal():
    u = circuit_unitary(rotate_45(0, 1), 2).matrix
    np.testing.assert_allclose(u, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-15)


def test_mirror_swaps_modes_with_phase_i():
    np.testing.assert_allclose(element_matrix(mirror(0, 1)).matrix, [[0, 1j], [1j, 0]], atol=1e-16)


def test_pbs_exchanges_vertical_components():
    u = element_matrix(pbs(0, 1, 2, 3)).matrix
    lay = ModeLayout.of("ab", polarized=True)
    out = apply_interferometer(PureState.basis(lay, (0, 1, 0, 0)), u)
    assert out.amplitude((0, 0, 0, 1)) == pytest.approx(1.0)
    out = apply_interferometer(PureState.basis(lay, (1, 0, 0, 0)), u)
    assert out.amplitude((1, 0, 0, 0)) == pytest.approx(1.0)


def test_element_spec_validation_and_json():
    with pytest.raises(InvalidSpec):
        ElementSpec("beam_splitter", (0,))
    with pytest.raises(InvalidSpec):
        ElementSpec("lens", (0,))
    with pytest.raises(InvalidSpec):
        beam_splitter(1, 1, 0.3)
    spec = beam_splitter(0, 2, 0.3, 0.1)
    assert ElementSpec.from_json(spec.to_json()) == spec
    assert spec.to_json()["kind"] == "bs"


def test_not_unitary_rejected():
    with pytest.raises(NotUnitary):
        ModeUnitary(np.array([[1, 1], [0, 1]]))


@settings(max_examples=50, deadline=None)
@given(angles, angles)
def test_splitter_matches_hamiltonian_exponential(theta, phi):
    direct = element_matrix(beam_splitter(0, 1, theta, phi)).matrix
    via_h = heisenberg_mode_matrix(beam_splitter_hamiltonian(theta, phi))
    np.testing.assert_allclose(direct, via_h, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(angles, angles, angles, angles)
def test_sequential_application_composes_in_list_order(t1, p1, t2, p2):
    lay = ModeLayout.of("abc")
    psi = PureState.basis(lay, (1, 1, 0), truncation=TruncationConfig(2, 2))
    a, b = beam_splitter(0, 1, t1, p1), beam_splitter(1, 2, t2, p2)
    stepwise = apply_circuit(apply_circuit(psi, [a]), [b])
    together = apply_interferometer(psi, circuit_unitary([a, b], 3))
    assert stepwise.max_abs_diff(together) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_interferometer_preserves_norm_and_photon_number(seed):
    rng = np.random.default_rng(seed)
    u = haar_unitary(3, rng)
    basis = fock_basis(3, 3, total=3)
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    lay = ModeLayout.of("abc")
    psi = PureState(lay, dict(zip(basis, amps / np.linalg.norm(amps))), TruncationConfig(3, 3))
    out = apply_interferometer(psi, u)
    assert out.norm2 == pytest.approx(1.0, abs=1e-12)
    assert out.photon_numbers() == {3}


def test_amplitude_oracle_matches_single_photon_matrix_element():
    rng = np.random.default_rng(1)
    u = haar_unitary(3, rng)
    for j, k in itertools.product(range(3), repeat=2):
        inp = [0, 0, 0]
        out = [0, 0, 0]
        inp[j] = out[k] = 1
        assert amplitude_oracle(inp, out, u) == pytest.approx(u.matrix[j, k])


def test_amplitude_oracle_rejects_mismatched_photon_numbers():
    with pytest.raises(PhotonNumberMismatch):
        amplitude_oracle([1, 0], [1, 1], np.eye(2))


def test_pipeline_agrees_with_permanent_oracle():
    rng = np.random.default_rng(2)
    for n in (2, 3, 4):
        u = haar_unitary(n, rng)
        lay = ModeLayout.of([f"m{i}" for i in range(n)])
        for inp in fock_basis(n, 3, total=3):
            out = apply_interferometer(PureState.basis(lay, inp, truncation=TruncationConfig(3, 3)), u)
            for o in fock_basis(n, 3, total=3):
                assert abs(out.amplitude(o) - amplitude_oracle(inp, o, u)) < 1e-10


def test_interferometer_matrix_is_unitary_on_closed_basis():
    basis = fock_basis(2, 2)
    m = interferometer_matrix(element_matrix(beam_splitter(0, 1, 0.4, 0.2)), basis)
    np.testing.assert_allclose(m.conj().T @ m, np.eye(len(basis)), atol=1e-12)
    with pytest.raises(TruncationExceeded):
        interferometer_matrix(element_matrix(beam_splitter(0, 1, 0.4)), [(0, 0), (1, 1)])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_reck_round_trip(n):
    rng = np.random.default_rng(100 + n)
    u = haar_unitary(n, rng)
    specs = reck_decompose(u)
    assert all(s.kind in ("beam_splitter", "phase") for s in specs)
    assert sum(s.kind == "beam_splitter" for s in specs) <= n * (n - 1) // 2
    assert np.abs(circuit_unitary(specs, n).matrix - u.matrix).max() < 1e-10


def test_reck_of_permutation_and_identity():
    perm = np.eye(4)[[2, 0, 3, 1]]
    assert np.abs(circuit_unitary(reck_decompose(perm), 4).matrix - perm).max() < 1e-12
    assert reck_decompose(np.eye(3)) == []


def test_dual_rail_to_polarization():
    lay = ModeLayout.of("ab")
    psi = (PureState.basis(lay, (1, 0), 0.6) + PureState.basis(lay, (0, 1), 0.8j))
    out = dual_rail_to_polarization(psi)
    assert out.layout.labels == (("a", "H"), ("a", "V"))
    assert out.amplitude((1, 0)) == pytest.approx(0.6)
    assert abs(out.amplitude((0, 1))) == pytest.approx(0.8)
    with pytest.raises(InvalidEncoding):
        dual_rail_to_polarization(PureState.basis(lay, (1, 1)))


def test_phase_and_polarization_rotation_matrices():
    np.testing.assert_allclose(element_matrix(phase(0, 0.7)).matrix, [[np.exp(0.7j)]])
    r = element_matrix(polarization_rotation(0, 1, 0.3, 0.0)).matrix
    np.testing.assert_allclose(r, element_matrix(beam_splitter(0, 1, 0.3, 0.0)).matrix)
