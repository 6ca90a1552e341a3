import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonqc import cluster as cl
from photonqc import qubits
from photonqc.errors import ZeroProbabilityBranch

angle = st.floats(-math.pi, math.pi, allow_nan=False)


def _graphs(prefix, max_size):
    for n in range(2, max_size + 1):
        names = [f"{prefix}{i}" for i in range(n)]
        yield cl.path_graph(names)
        if n >= 3:
            yield cl.star_graph(names[0], names[1:])


def test_graph_validation():
    with pytest.raises(ValueError):
        cl.ClusterGraph(("a", "a"))
    with pytest.raises(ValueError):
        cl.ClusterGraph(("a",), frozenset({frozenset(("a", "b"))}))
    g = cl.path_graph("abc")
    assert g.neighbors("b") == ["a", "c"]
    assert g.to_json()["adjacency"]["a"] == ["b"]


def test_two_qubit_cluster_is_cz_on_plus_plus():
    reg = cl.build_cluster(cl.path_graph("ab"))
    expected = qubits.CZ @ np.kron(qubits.PLUS, qubits.PLUS)
    np.testing.assert_allclose(reg.amplitudes, expected, atol=1e-15)


def test_cluster_stabilizers():
    g = cl.star_graph("c", ["x", "y", "z"])
    reg = cl.build_cluster(g)
    for v in g.vertices:
        out = reg.apply(qubits.X, v)
        for w in g.neighbors(v):
            out = out.apply(qubits.Z, w)
        assert abs(np.vdot(reg.amplitudes, out.amplitudes) - 1) < 1e-12


def test_equatorial_measurement_teleports_h_z():
    rng = np.random.default_rng(3)
    psi = qubits.random_qubit(rng)
    for alpha in (0.0, 0.4, -1.3):
        for m in (0, 1):
            run = cl.linear_pattern(psi, [alpha], outcomes=[m])
            expected = qubits.HADAMARD @ qubits.rz(alpha) @ psi
            raw = qubits.pauli_power(m, 0) @ expected
            assert cl.fidelity(run.output.amplitudes, raw) == pytest.approx(1.0, abs=1e-12)
            assert run.records[0].branch_probability == pytest.approx(0.5)


def test_frame_rules():
    assert cl.frame_after_measurement((0, 0), 1) == (1, 0)
    assert cl.frame_after_measurement((1, 0), 0) == (0, 1)
    assert cl.frame_after_measurement((1, 1), 1) == (0, 1)
    assert cl.adapted_angle(0.3, (1, 0)) == -0.3
    assert cl.frame_through_cz((1, 0), (0, 0)) == ((1, 0), (0, 1))


def test_frame_through_cz_matches_operator_identity():
    for x0, z0, x1, z1 in itertools.product((0, 1), repeat=4):
        pauli = np.kron(qubits.pauli_power(x0, z0), qubits.pauli_power(x1, z1))
        (a0, b0), (a1, b1) = cl.frame_through_cz((x0, z0), (x1, z1))
        moved = np.kron(qubits.pauli_power(a0, b0), qubits.pauli_power(a1, b1))
        lhs = qubits.CZ @ pauli
        rhs = moved @ qubits.CZ
        ratio = lhs[np.nonzero(rhs)] / rhs[np.nonzero(rhs)]
        assert np.allclose(ratio, ratio[0]) and abs(abs(ratio[0]) - 1) < 1e-12


@settings(max_examples=40, deadline=None)
@given(angle, angle, angle, st.integers(0, 2 ** 32 - 1))
def test_one_way_rotation_all_branches(a, b, c, seed):
    psi = qubits.random_qubit(np.random.default_rng(seed))
    target = qubits.euler_rotation(a, b, c) @ psi
    for outs in itertools.product((0, 1), repeat=3):
        _, _, corrected = cl.one_way_rotation(psi, a, b, c, outcomes=outs)
        assert qubits.state_fidelity(target, corrected) == pytest.approx(1.0, abs=1e-10)


def test_one_way_rotation_is_seeded():
    psi = qubits.random_qubit(np.random.default_rng(0))
    a = cl.one_way_rotation(psi, 0.1, 0.2, 0.3, rng=np.random.default_rng(9))
    b = cl.one_way_rotation(psi, 0.1, 0.2, 0.3, rng=np.random.default_rng(9))
    assert [r.outcome for r in a[1]] == [r.outcome for r in b[1]]


def test_cz_bridge_all_branches_and_orderings():
    rng = np.random.default_rng(11)
    for _ in range(5):
        psi = qubits.random_qubit(rng, 2)
        report = cl.cz_bridge_transcript(psi)
        assert report["min_fidelity"] == pytest.approx(1.0, abs=1e-10)
        assert report["max_probability_gap"] < 1e-12
        assert report["total_probability"] == pytest.approx(1.0)


def test_cz_bridge_rejects_unknown_ordering():
    with pytest.raises(ValueError):
        cl.cz_via_bridge(np.array([1, 0, 0, 0]), outcomes=[0] * 4, ordering="late")


def test_fusion_merge_on_paths_and_stars():
    for g1 in _graphs("a", 4):
        for g2 in _graphs("b", 8 - len(g1.vertices)):
            c1, c2 = cl.ClusterState.ideal(g1), cl.ClusterState.ideal(g2)
            for outcome in (0, 1):
                res = cl.fusion_merge(c1, g1.vertices[-1], c2, g2.vertices[0], outcome)
                assert res.state.fidelity_with_graph() == pytest.approx(1.0, abs=1e-10)
                assert res.probability == pytest.approx(0.5)
                assert len(res.state.graph.vertices) == len(g1.vertices) + len(g2.vertices) - 1


def test_dh_merge_matches_reference_and_creates_leaf():
    for g1 in _graphs("a", 4):
        for g2 in _graphs("b", 8 - len(g1.vertices)):
            q1, q2 = g1.vertices[-1], g2.vertices[0]
            c1, c2 = cl.ClusterState.ideal(g1), cl.ClusterState.ideal(g2)
            ref = cl.dh_reference_state(g1, q1, g2, q2)
            for sign in (+1, -1):
                res = cl.dh_merge(c1, q1, c2, q2, sign)
                assert res.state.fidelity_with_graph() == pytest.approx(1.0, abs=1e-10)
                assert cl.fidelity(res.state.corrected(), ref) == pytest.approx(1.0, abs=1e-10)
                assert res.state.graph.neighbors(q2) == [q1]
                assert set(res.state.graph.neighbors(q1)) == set(g1.neighbors(q1)) | set(g2.neighbors(q2)) | {q2}


def test_merge_requires_disjoint_clusters():
    c1 = cl.ClusterState.ideal(cl.path_graph("ab"))
    with pytest.raises(ValueError):
        cl.fusion_merge(c1, "b", c1, "a")


def test_dh_merge_zero_branch():
    g = cl.ClusterGraph(("a",))
    zero = cl.ClusterState(g, cl.QubitRegister(("a",), np.array([1, 0])))
    other = cl.ClusterState(cl.ClusterGraph(("b",)), cl.QubitRegister(("b",), np.array([1, 0])))
    with pytest.raises(ZeroProbabilityBranch):
        cl.dh_merge(zero, "a", other, "b")


@pytest.mark.parametrize("p,m", [(1.0, 3), (0.5, 5), (0.5, 4), (0.25, 8), (0.25, 9)])
def test_growth_drift_within_three_sigma(p, m):
    res = cl.growth_simulation(p, m, 1000, 10_000, np.random.default_rng(17))
    assert abs(res.drift - (p * m - 2)) <= 3 * res.sigma + 1e-12


def test_growth_trajectory_is_floored_and_seeded():
    a = cl.growth_simulation(0.1, 3, 2, 200, np.random.default_rng(1))
    b = cl.growth_simulation(0.1, 3, 2, 200, np.random.default_rng(1))
    assert (a.trajectory >= 0).all() and a.floor_hits > 0
    np.testing.assert_array_equal(a.trajectory, b.trajectory)
    assert list(a.rows())[0] == (0, 2)
    with pytest.raises(ValueError):
        cl.growth_simulation(0.0, 3, 2, 10, np.random.default_rng(1))
