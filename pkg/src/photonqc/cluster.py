"""Qubit-level cluster states and measurement-based computation.

States are dense vectors.  Measurement byproducts are tracked in a Pauli
frame: a frame ``(x, z)`` on a qubit means the physical state equals
``X^x Z^z`` applied to the ideal one, so the undo operation is ``Z^z X^x``.
Frames are compared against ideal states only up to a global phase.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import qubits
from .errors import ZeroProbabilityBranch

Vertex = Hashable


# ---------------------------------------------------------------------------
# registers

@dataclass(frozen=True, eq=False)
class QubitRegister:
    """Labelled qubits; the first label is the most significant bit."""

    labels: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(self.labels):
            raise ValueError(f"{amps.size} amplitudes for {len(self.labels)} qubits")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("qubit labels must be distinct")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"register norm {norm} is not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, labels: Sequence, vec: np.ndarray) -> "QubitRegister":
        v = np.asarray(vec, dtype=complex)
        n = np.linalg.norm(v)
        if n == 0:
            raise ZeroProbabilityBranch("zero state vector")
        return cls(tuple(labels), v / n)

    @property
    def n(self) -> int:
        return len(self.labels)

    def axis(self, label) -> int:
        return self.labels.index(label)

    def _tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.n)

    def apply(self, op: np.ndarray, *targets) -> "QubitRegister":
        return QubitRegister.from_vector(self.labels, _apply(self._tensor(), op, [self.axis(t) for t in targets]))

    def tensor(self, other: "QubitRegister") -> "QubitRegister":
        return QubitRegister(self.labels + other.labels, np.kron(self.amplitudes, other.amplitudes))

    def reorder(self, labels: Sequence) -> "QubitRegister":
        perm = [self.axis(lab) for lab in labels]
        return QubitRegister(tuple(labels), np.transpose(self._tensor(), perm).reshape(-1))

    def project(self, label, bra: np.ndarray) -> tuple[float, np.ndarray]:
        """Contract ``label`` with a single-qubit bra; returns (probability, unnormalized rest)."""
        t = np.moveaxis(self._tensor(), self.axis(label), 0)
        rest = np.tensordot(np.asarray(bra), t, axes=(0, 0)).reshape(-1)
        return float(np.vdot(rest, rest).real), rest

    def without(self, label) -> tuple:
        return tuple(lab for lab in self.labels if lab != label)

    def reduced_density(self, label) -> np.ndarray:
        t = np.moveaxis(self._tensor(), self.axis(label), 0).reshape(2, -1)
        return t @ t.conj().T


def _apply(t: np.ndarray, op: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    k = len(axes)
    op_t = np.asarray(op, dtype=complex).reshape((2,) * (2 * k))
    moved = np.tensordot(op_t, t, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(moved, list(range(k)), list(axes)).reshape(-1)


def fidelity(a: QubitRegister | np.ndarray, b: QubitRegister | np.ndarray) -> float:
    va = a.amplitudes if isinstance(a, QubitRegister) else np.asarray(a)
    vb = b.amplitudes if isinstance(b, QubitRegister) else np.asarray(b)
    return float(abs(np.vdot(va, vb)) ** 2 / (np.vdot(va, va).real * np.vdot(vb, vb).real))


# ---------------------------------------------------------------------------
# graphs

def _edge(u, v) -> frozenset:
    if u == v:
        raise ValueError("self-loops are not allowed")
    return frozenset((u, v))


@dataclass(frozen=True)
class ClusterGraph:
    vertices: tuple
    edges: frozenset = frozenset()
    pending_corrections: Mapping = field(default_factory=dict)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertices")
        edges = frozenset(_edge(*tuple(e)) for e in self.edges)
        for e in edges:
            if not e <= set(verts):
                raise ValueError(f"edge {set(e)} references a missing vertex")
        corr = {}
        for v, (x, z) in dict(self.pending_corrections).items():
            if v not in verts or x not in (0, 1) or z not in (0, 1):
                raise ValueError(f"bad correction {v}: {(x, z)}")
            if x or z:
                corr[v] = (int(x), int(z))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "pending_corrections", corr)

    def __hash__(self):
        return hash((self.vertices, self.edges, tuple(sorted(self.pending_corrections.items(), key=repr))))

    def neighbors(self, v) -> list:
        return [w for w in self.vertices if w != v and frozenset((v, w)) in self.edges]

    def frame(self, v) -> tuple[int, int]:
        return self.pending_corrections.get(v, (0, 0))

    def ideal(self) -> "ClusterGraph":
        return ClusterGraph(self.vertices, self.edges)

    def sorted_edges(self) -> list[tuple]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted((tuple(sorted(e, key=pos.get)) for e in self.edges), key=lambda e: (pos[e[0]], pos[e[1]]))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "adjacency": {str(v): self.neighbors(v) for v in self.vertices},
            "corrections": {str(v): list(f) for v, f in self.pending_corrections.items()},
        }


def path_graph(vertices: Sequence) -> ClusterGraph:
    return ClusterGraph(tuple(vertices), frozenset(_edge(a, b) for a, b in zip(vertices, vertices[1:])))


def star_graph(center, leaves: Sequence) -> ClusterGraph:
    return ClusterGraph((center, *leaves), frozenset(_edge(center, leaf) for leaf in leaves))


def build_cluster(graph: ClusterGraph) -> QubitRegister:
    """|+>^n with CZ on every edge; pending corrections are not applied."""
    if not graph.vertices:
        raise ValueError("graph has no vertices")
    n = len(graph.vertices)
    bits = np.array(list(itertools.product((0, 1), repeat=n)))
    signs = np.ones(2 ** n)
    pos = {v: i for i, v in enumerate(graph.vertices)}
    for e in graph.edges:
        a, b = (pos[v] for v in e)
        signs *= 1 - 2 * (bits[:, a] & bits[:, b])
    return QubitRegister(graph.vertices, signs / np.sqrt(2 ** n))


@dataclass(frozen=True)
class ClusterState:
    graph: ClusterGraph
    register: QubitRegister

    def __post_init__(self):
        if self.register.labels != self.graph.vertices:
            raise ValueError("register labels must match graph vertex order")

    @classmethod
    def ideal(cls, graph: ClusterGraph) -> "ClusterState":
        return cls(graph.ideal(), build_cluster(graph))

    def corrected(self) -> QubitRegister:
        """Register with every recorded Pauli undone."""
        reg = self.register
        for v, (x, z) in self.graph.pending_corrections.items():
            reg = reg.apply(qubits.pauli_power(x, z).conj().T, v)
        return reg

    def fidelity_with_graph(self) -> float:
        return fidelity(self.corrected(), build_cluster(self.graph))


# ---------------------------------------------------------------------------
# measurements

@dataclass(frozen=True)
class MeasurementRecord:
    qubit: Hashable
    basis: str
    angle: float | None
    outcome: int
    branch_probability: float

    def to_json(self) -> dict:
        return {"qubit": self.qubit, "basis": self.basis, "angle": self.angle,
                "outcome": self.outcome, "branch_probability": self.branch_probability}


def equatorial_bras(alpha: float) -> np.ndarray:
    """Rows are <m| H Z(alpha): the eigenbasis of Z(-alpha) X Z(alpha)."""
    return qubits.HADAMARD @ qubits.rz(alpha)


def _measure(reg: QubitRegister, qubit, bras: np.ndarray, basis: str, angle, rng, outcome):
    probs = []
    rests = []
    for row in bras:
        p, rest = reg.project(qubit, row)
        probs.append(p)
        rests.append(rest)
    total = sum(probs)
    probs = [p / total for p in probs]
    if outcome is None:
        if rng is None:
            raise ValueError("either an rng or a forced outcome is required")
        outcome = int(rng.random() >= probs[0])
    if probs[outcome] <= 1e-15:
        raise ZeroProbabilityBranch(f"outcome {outcome} on {qubit} has zero probability")
    record = MeasurementRecord(qubit, basis, angle, outcome, probs[outcome])
    if reg.n == 1:
        return record, None
    return record, QubitRegister.from_vector(reg.without(qubit), rests[outcome])


def measure_equatorial(reg: QubitRegister, qubit, alpha: float, rng: np.random.Generator | None = None,
                       outcome: int | None = None) -> tuple[MeasurementRecord, QubitRegister | None]:
    """Measure ``qubit`` in the eigenbasis of Z(-alpha) X Z(alpha) and remove it.

    Outcome ``m`` leaves a CZ-linked |+> neighbour holding X^m H Z(alpha) of the
    measured qubit's state.  Pass ``outcome`` to follow a chosen branch.
    """
    return _measure(reg, qubit, equatorial_bras(alpha), "equatorial", float(alpha), rng, outcome)


def measure_computational(reg: QubitRegister, qubit, rng: np.random.Generator | None = None,
                          outcome: int | None = None) -> tuple[MeasurementRecord, QubitRegister | None]:
    return _measure(reg, qubit, np.eye(2), "computational", None, rng, outcome)


def frame_after_measurement(frame: tuple[int, int], outcome: int) -> tuple[int, int]:
    """Frame on the next qubit of a chain after measuring with an adapted angle."""
    x, z = frame
    return outcome ^ z, x


def adapted_angle(alpha: float, frame: tuple[int, int]) -> float:
    """Angle to measure at so that a pending X^x acts as Z(alpha) rather than Z(-alpha)."""
    return (-1) ** frame[0] * alpha


def frame_through_cz(f0: tuple[int, int], f1: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    (x0, z0), (x1, z1) = f0, f1
    return (x0, z0 ^ x1), (x1, z1 ^ x0)


def undo_frame(frame: tuple[int, int]) -> np.ndarray:
    x, z = frame
    return qubits.pauli_power(x, z).conj().T


# ---------------------------------------------------------------------------
# one-way single-qubit rotations

@dataclass(frozen=True)
class OneWayRun:
    output: QubitRegister
    records: tuple[MeasurementRecord, ...]
    frame: tuple[int, int]

    def corrected(self) -> np.ndarray:
        """Output with the Pauli frame undone: H Z(a_n) ... H Z(a_1) |psi>."""
        return undo_frame(self.frame) @ self.output.amplitudes


def linear_pattern(psi: np.ndarray, angles: Sequence[float], rng: np.random.Generator | None = None,
                   outcomes: Sequence[int] | None = None) -> OneWayRun:
    """Teleport ``psi`` along a linear cluster, applying H Z(angle) per measured qubit."""
    n = len(angles)
    labels = tuple(range(n + 1))
    graph = path_graph(labels)
    plus = qubits.PLUS
    vec = np.asarray(psi, dtype=complex)
    vec = vec / np.linalg.norm(vec)
    for _ in range(n):
        vec = np.kron(vec, plus)
    reg = QubitRegister(labels, vec)
    for a, b in graph.sorted_edges():
        reg = reg.apply(qubits.CZ, a, b)
    frame = (0, 0)
    records = []
    for j, alpha in enumerate(angles):
        forced = None if outcomes is None else outcomes[j]
        rec, reg = measure_equatorial(reg, j, adapted_angle(alpha, frame), rng, forced)
        records.append(rec)
        frame = frame_after_measurement(frame, rec.outcome)
    return OneWayRun(reg, tuple(records), frame)


def one_way_rotation(psi: np.ndarray, alpha: float, beta: float, gamma: float,
                     rng: np.random.Generator | None = None,
                     outcomes: Sequence[int] | None = None) -> tuple[QubitRegister, list[MeasurementRecord], np.ndarray]:
    """Apply Z(gamma) X(beta) Z(alpha) to ``psi`` on a four-qubit linear cluster.

    Returns the raw output qubit, the measurement records, and the
    frame-corrected output (the frame undone, then the final Hadamard).
    """
    run = linear_pattern(psi, [alpha, beta, gamma], rng, outcomes)
    corrected = qubits.HADAMARD @ run.corrected()
    return run.output, list(run.records), corrected


# ---------------------------------------------------------------------------
# CZ through a vertical bridge

@dataclass(frozen=True)
class BridgeRun:
    output: QubitRegister
    records: tuple[MeasurementRecord, ...]
    frames: tuple[tuple[int, int], tuple[int, int]]
    probability: float

    def corrected(self) -> np.ndarray:
        fix = np.kron(qubits.HADAMARD @ undo_frame(self.frames[0]), qubits.HADAMARD @ undo_frame(self.frames[1]))
        return fix @ self.output.amplitudes


def cz_via_bridge(psi_in: np.ndarray, rng: np.random.Generator | None = None,
                  outcomes: Sequence[int] | None = None, ordering: str = "interleaved") -> BridgeRun:
    """Two rows of three qubits; a vertical edge between the middle column.

    Column 1 is loaded with (H x H)|psi_in>, so the two Hadamard teleports
    plus a final Hadamard per row leave CZ|psi_in> on column 3 after the
    frame is undone.  ``ordering`` is ``"interleaved"`` (entangle column by
    column between measurements) or ``"early"`` (all CZs first).
    ``outcomes`` are for qubits (0,1), (1,1), (0,2), (1,2).
    """
    if ordering not in ("interleaved", "early"):
        raise ValueError("ordering must be 'interleaved' or 'early'")
    labels = ((0, 1), (1, 1), (0, 2), (1, 2), (0, 3), (1, 3))
    loaded = np.kron(qubits.HADAMARD, qubits.HADAMARD) @ np.asarray(psi_in, dtype=complex)
    vec = loaded / np.linalg.norm(loaded)
    for _ in range(4):
        vec = np.kron(vec, qubits.PLUS)
    reg = QubitRegister(labels, vec)
    first = [((0, 1), (0, 2)), ((1, 1), (1, 2))]
    second = [((0, 2), (1, 2)), ((0, 2), (0, 3)), ((1, 2), (1, 3))]
    forced = list(outcomes) if outcomes is not None else [None] * 4
    prob = 1.0
    records = []
    frames = [(0, 0), (0, 0)]

    def entangle(edges):
        nonlocal reg
        for a, b in edges:
            reg = reg.apply(qubits.CZ, a, b)

    def measure_column(col, offset):
        nonlocal reg, prob
        for row in (0, 1):
            angle = adapted_angle(0.0, frames[row])
            rec, reg = measure_equatorial(reg, (row, col), angle, rng, forced[offset + row])
            records.append(rec)
            prob *= rec.branch_probability
            frames[row] = frame_after_measurement(frames[row], rec.outcome)

    if ordering == "early":
        entangle(first + second)
        measure_column(1, 0)
        frames[0], frames[1] = frame_through_cz(frames[0], frames[1])
        measure_column(2, 2)
    else:
        entangle(first)
        measure_column(1, 0)
        entangle(second[:1])
        frames[0], frames[1] = frame_through_cz(frames[0], frames[1])
        entangle(second[1:])
        measure_column(2, 2)
    return BridgeRun(reg, tuple(records), (frames[0], frames[1]), prob)


def cz_bridge_transcript(psi_in: np.ndarray) -> dict:
    """Every measurement branch in both orderings, with fidelity to CZ|psi_in>."""
    target = qubits.CZ @ (np.asarray(psi_in, dtype=complex) / np.linalg.norm(psi_in))
    rows = []
    for outs in itertools.product((0, 1), repeat=4):
        inter = cz_via_bridge(psi_in, outcomes=outs, ordering="interleaved")
        early = cz_via_bridge(psi_in, outcomes=outs, ordering="early")
        rows.append({
            "outcomes": list(outs),
            "probability": inter.probability,
            "probability_early": early.probability,
            "fidelity": fidelity(inter.corrected(), target),
            "fidelity_early": fidelity(early.corrected(), target),
            "orderings_agree": fidelity(inter.output, early.output),
        })
    return {
        "branches": rows,
        "min_fidelity": min(min(r["fidelity"], r["fidelity_early"]) for r in rows),
        "max_probability_gap": max(abs(r["probability"] - r["probability_early"]) for r in rows),
        "total_probability": sum(r["probability"] for r in rows),
    }


# ---------------------------------------------------------------------------
# merging clusters

@dataclass(frozen=True)
class MergeResult:
    state: ClusterState
    probability: float


def _joint(c1: ClusterState, c2: ClusterState, q1, q2) -> QubitRegister:
    if set(c1.graph.vertices) & set(c2.graph.vertices):
        raise ValueError("clusters must be disjoint")
    if q1 not in c1.graph.vertices or q2 not in c2.graph.vertices:
        raise ValueError("merge qubits must belong to their clusters")
    if c1.graph.frame(q1) != (0, 0) or c2.graph.frame(q2) != (0, 0):
        raise ValueError("merge qubits must not carry pending corrections")
    return c1.register.tensor(c2.register)


def _branch_weight(reg: QubitRegister, op: np.ndarray, q1, q2) -> tuple[float, np.ndarray]:
    t = reg._tensor()
    a, b = reg.axis(q1), reg.axis(q2)
    moved = np.moveaxis(t, [a, b], [0, 1]).reshape(4, -1)
    out = op @ moved
    return float(np.vdot(out, out).real), out


def fusion_merge(c1: ClusterState, q1, c2: ClusterState, q2, outcome: int = 0) -> MergeResult:
    """Type-I fusion of ``q1`` and ``q2`` acting as |0><00| +/- |1><11|.

    The surviving qubit keeps the label and position of ``q1`` and inherits
    the union of both neighbourhoods.  Outcome 1 records a Z on it.
    Probability is relative to the two heralded outcomes.
    """
    reg = _joint(c1, c2, q1, q2)
    sign = 1 if outcome == 0 else -1
    proj = np.array([[1, 0, 0, 0], [0, 0, 0, sign]], dtype=complex)
    w, out = _branch_weight(reg, proj, q1, q2)
    w_other, _ = _branch_weight(reg, np.array([[1, 0, 0, 0], [0, 0, 0, -sign]]), q1, q2)
    if w <= 1e-15:
        raise ZeroProbabilityBranch("fusion projector annihilates the input")
    rest = [lab for lab in reg.labels if lab not in (q1, q2)]
    merged_reg = QubitRegister.from_vector((q1, *rest), out.reshape(-1)).reorder(
        [v for v in reg.labels if v != q2])
    edges = {e for e in c1.graph.edges | c2.graph.edges if q1 not in e and q2 not in e}
    for v in c1.graph.neighbors(q1) + c2.graph.neighbors(q2):
        edges.add(_edge(q1, v))
    corr = dict(c1.graph.pending_corrections) | dict(c2.graph.pending_corrections)
    if outcome == 1:
        corr[q1] = (0, 1)
    graph = ClusterGraph(merged_reg.labels, frozenset(edges), corr)
    return MergeResult(ClusterState(graph, merged_reg), w / (w + w_other))


def dh_merge(c1: ClusterState, q1, c2: ClusterState, q2, sign: int = +1) -> MergeResult:
    """Join two clusters with the double-heralding projector E+/-.

    After E = |01><01| +/- |10><10| on (q1, q2), the local Cliffords X on q1,
    H on q2 and Z on each former neighbour of q1 bring the state to cluster
    form: q1 is linked to both old neighbourhoods and to q2, and q2 is a leaf
    hanging off q1 (a redundantly encoded qubit).  E- records a Z on q1.
    """
    reg = _joint(c1, c2, q1, q2)
    e = np.diag([0, 1, sign, 0]).astype(complex)
    w, _ = _branch_weight(reg, e, q1, q2)
    w_other, _ = _branch_weight(reg, np.diag([0, 1, -sign, 0]).astype(complex), q1, q2)
    if w <= 1e-15:
        raise ZeroProbabilityBranch("double-heralding projector annihilates the input")
    out = _apply_unnormalized(reg, e, q1, q2)
    out = out.apply(qubits.X, q1).apply(qubits.HADAMARD, q2)
    n1 = c1.graph.neighbors(q1)
    n2 = c2.graph.neighbors(q2)
    for v in n1:
        out = out.apply(qubits.Z, v)
    edges = {ed for ed in c1.graph.edges | c2.graph.edges if q1 not in ed and q2 not in ed}
    for v in n1 + n2 + [q2]:
        edges.add(_edge(q1, v))
    corr = dict(c1.graph.pending_corrections) | dict(c2.graph.pending_corrections)
    if sign < 0:
        corr[q1] = (0, 1)
    graph = ClusterGraph(out.labels, frozenset(edges), corr)
    return MergeResult(ClusterState(graph, out), w / (w + w_other))


def _apply_unnormalized(reg: QubitRegister, op: np.ndarray, a, b) -> QubitRegister:
    return QubitRegister.from_vector(reg.labels, _apply(reg._tensor(), op, [reg.axis(a), reg.axis(b)]))


def dh_reference_state(g1: ClusterGraph, q1, g2: ClusterGraph, q2) -> QubitRegister:
    """|0>_1 |Psi>|+>_2 + |1>_1 (prod Z over n(1) u n(2)) Z_2 |Psi>|+>_2, built term by term.

    ``|Psi>`` is the product of the two clusters with q1 and q2 removed.
    """
    rest1 = [v for v in g1.vertices if v != q1]
    rest2 = [v for v in g2.vertices if v != q2]
    sub1 = ClusterGraph(tuple(rest1), frozenset(e for e in g1.edges if q1 not in e))
    sub2 = ClusterGraph(tuple(rest2), frozenset(e for e in g2.edges if q2 not in e))
    parts = [build_cluster(s) for s in (sub1, sub2) if s.vertices]
    psi = parts[0] if parts else None
    for p in parts[1:]:
        psi = psi.tensor(p)
    labels = (q1, q2, *(psi.labels if psi else ()))
    psi_vec = psi.amplitudes if psi else np.ones(1, dtype=complex)
    z_psi = QubitRegister(psi.labels, psi_vec) if psi else None
    if z_psi is not None:
        for v in g1.neighbors(q1) + g2.neighbors(q2):
            z_psi = z_psi.apply(qubits.Z, v)
    z_vec = z_psi.amplitudes if z_psi else psi_vec
    minus = np.array([1, -1]) / np.sqrt(2)
    vec = np.kron(np.kron(qubits.KET0, qubits.PLUS), psi_vec) + np.kron(np.kron(qubits.KET1, minus), z_vec)
    reg = QubitRegister.from_vector(labels, vec)
    return reg.reorder([v for v in g1.vertices] + [v for v in g2.vertices])


# ---------------------------------------------------------------------------
# growth economics

@dataclass(frozen=True)
class GrowthResult:
    trajectory: np.ndarray
    drift: float
    realized_drift: float
    expected_drift: float
    sigma: float
    floor_hits: int

    def rows(self) -> Iterable[tuple[int, int]]:
        return ((i, int(s)) for i, s in enumerate(self.trajectory))


def growth_simulation(p: float, m: int, n0: int, steps: int, rng: np.random.Generator) -> GrowthResult:
    """Attach mini-clusters of size ``m`` by fusion with success probability ``p``.

    Success adds m - 2 qubits (two are consumed by the fusion); failure
    removes two.  Sizes are floored at zero.  ``drift`` averages the attempted
    increments, ``realized_drift`` the actual size change per step.
    """
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if m < 2 or n0 < 2 or steps < 1:
        raise ValueError("need m >= 2, n0 >= 2 and steps >= 1")
    success = rng.random(steps) < p
    increments = np.where(success, m - 2, -2)
    sizes = np.empty(steps + 1, dtype=np.int64)
    sizes[0] = n0
    hits = 0
    for i, inc in enumerate(increments):
        nxt = sizes[i] + inc
        if nxt < 0:
            nxt = 0
            hits += 1
        sizes[i + 1] = nxt
    sigma = float(np.sqrt(p * (1 - p)) * m / np.sqrt(steps))
    return GrowthResult(sizes, float(increments.mean()), float((sizes[-1] - sizes[0]) / steps),
                        p * m - 2, sigma, hits)
