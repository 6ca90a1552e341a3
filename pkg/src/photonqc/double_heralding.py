"""Heralded entanglement of two emitters by two rounds of single-click detection.

Qubit convention: ``|up> = |0>`` emits a photon under the pi pulse and
``|down> = |1>`` does not.  Two-qubit index ``2*q1 + q2``.

Each emitter's photon enters one port of a 50:50 splitter (emitter 1 in
``a``, emitter 2 in ``b``).  Photons carry a two-level internal label: the
photon from emitter 1 is in label 0, the one from emitter 2 in
``overlap*|0> + sqrt(1 - overlap^2)*|1>``.  Bucket detectors watch the two
output ports (``c`` behind ``a``, ``d`` behind ``b``) and see both labels.
A click in ``c`` alone heralds ``+``, a click in ``d`` alone heralds ``-``.

The joint register is a :class:`fock_core.DensityOperator` whose basis
tuples are ``(q1, q2, a0, a1, b0, b1)``: the two qubit values followed by
photon numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import qubits
from .fock_core import DensityOperator, fock_basis, threshold_detect
from .linear_optics import circuit_unitary, fifty_fifty, interferometer_matrix
from .seeding import trial_generators

UP, DOWN = 0, 1
PHOTON_BASIS = tuple(fock_basis(4, 2))
QUBIT_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))
JOINT_BASIS = tuple(q + p for q in QUBIT_BASIS for p in PHOTON_BASIS)
C_MODES, D_MODES = (2, 3), (4, 5)

PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)
PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
UP_UP = np.array([1, 0, 0, 0], dtype=complex)
FLIP = np.kron(qubits.X, qubits.X)

SIGNATURES = {(0, 0): "none", (1, 0): "+", (0, 1): "-", (1, 1): "both"}


@dataclass(frozen=True)
class DistinguishabilityModel:
    overlap: float = 1.0

    def __post_init__(self):
        if not 0 <= self.overlap <= 1:
            raise ValueError("overlap must lie in [0, 1]")

    def label_amplitudes(self) -> tuple[float, float]:
        return self.overlap, math.sqrt(max(0.0, 1 - self.overlap ** 2))


@dataclass(frozen=True, eq=False)
class HeraldResult:
    round: int
    signature: tuple[int, int]
    conditional: np.ndarray | None
    probability: float

    @property
    def sign(self) -> int | None:
        return {(1, 0): +1, (0, 1): -1}.get(self.signature)


def _photon_ket(q1: int, q2: int, labels: tuple[float, float], delta: float) -> np.ndarray:
    ket = np.zeros(len(PHOTON_BASIS), dtype=complex)
    index = {occ: i for i, occ in enumerate(PHOTON_BASIS)}
    a = [(1, 0, 1.0)] if q1 == UP else [(0, 0, 1.0)]
    b = ([(1, 0, labels[0] * np.exp(1j * delta)), (0, 1, labels[1] * np.exp(1j * delta))]
         if q2 == UP else [(0, 0, 1.0)])
    for a0, a1, ca in a:
        for b0, b1, cb in b:
            ket[index[(a0, a1, b0, b1)]] += ca * cb
    return ket


def emission_isometry(model: DistinguishabilityModel, delta: float = 0.0) -> np.ndarray:
    """Map qubit kets to qubit-plus-photon kets; ``delta`` is a phase on port ``b``."""
    labels = model.label_amplitudes()
    iso = np.zeros((len(JOINT_BASIS), 4), dtype=complex)
    n_ph = len(PHOTON_BASIS)
    for k, (q1, q2) in enumerate(QUBIT_BASIS):
        iso[k * n_ph:(k + 1) * n_ph, k] = _photon_ket(q1, q2, labels, delta)
    return iso


@lru_cache(maxsize=None)
def _splitter() -> np.ndarray:
    u = circuit_unitary([*fifty_fifty(0, 2), *fifty_fifty(1, 3)], 4)
    return np.kron(np.eye(4), interferometer_matrix(u, PHOTON_BASIS))


def as_density(qubit_state: np.ndarray) -> np.ndarray:
    s = np.asarray(qubit_state, dtype=complex)
    if s.ndim == 1:
        s = np.outer(s, s.conj())
    return s / np.trace(s).real


def pi_pulse_emit(qubit_state: np.ndarray, model: DistinguishabilityModel = DistinguishabilityModel(),
                  delta: float = 0.0) -> DensityOperator:
    """Each |up> emitter puts one photon into its port; |down> emits vacuum."""
    iso = emission_isometry(model, delta)
    return DensityOperator(JOINT_BASIS, iso @ as_density(qubit_state) @ iso.conj().T)


def interfere(joint: DensityOperator) -> DensityOperator:
    return joint.transform(_splitter(), JOINT_BASIS)


def qubit_matrix(rho: DensityOperator) -> np.ndarray:
    """4x4 matrix in the canonical qubit order from a traced-down operator."""
    index = [rho.basis.index(q) if q in rho.basis else None for q in QUBIT_BASIS]
    out = np.zeros((4, 4), dtype=complex)
    for i, bi in enumerate(index):
        for j, bj in enumerate(index):
            if bi is not None and bj is not None:
                out[i, j] = rho.matrix[bi, bj]
    return out


def herald_branches(qubit_state: np.ndarray, eta: float, model: DistinguishabilityModel = DistinguishabilityModel(),
                    delta: float = 0.0, round_index: int = 1) -> list[HeraldResult]:
    """Emit, interfere and detect with bucket detectors of efficiency ``eta``.

    Returns all four click patterns (c, d) with exact probabilities and the
    normalized qubit state for each (``None`` for impossible patterns).
    """
    joint = interfere(pi_pulse_emit(qubit_state, model, delta))
    results = []
    for c_label, c_rho, c_p in threshold_detect(joint, C_MODES, eta):
        d_branches = (threshold_detect(c_rho, (2, 3), eta) if c_rho is not None
                      else [("no-click", None, 0.0), ("click", None, 0.0)])
        for d_label, d_rho, d_p in d_branches:
            sig = (int(c_label == "click"), int(d_label == "click"))
            p = c_p * d_p
            cond = qubit_matrix(d_rho) if (d_rho is not None and p > 1e-15) else None
            results.append(HeraldResult(round_index, sig, cond, p))
    return results


def single_click_f(eta: float) -> float:
    """Weight of the entangled part after one heralded round: 2 / (4 - eta).

    A single photon (from the |down,up> or |up,down> branch) is seen with
    probability eta; the bunched pair from |up,up> gives exactly one click
    with probability eta (2 - eta) / 2 per detector branch.
    """
    return 2 / (4 - eta)


def dh_round(qubit_state: np.ndarray, eta: float, model: DistinguishabilityModel, rng: np.random.Generator,
             delta: float = 0.0, round_index: int = 1) -> HeraldResult:
    branches = herald_branches(qubit_state, eta, model, delta, round_index)
    probs = np.array([b.probability for b in branches])
    pick = int(rng.choice(len(branches), p=probs / probs.sum()))
    return branches[pick]


@dataclass(frozen=True, eq=False)
class ProtocolBranch:
    signs: tuple[int, int]
    probability: float
    final: np.ndarray

    @property
    def target(self) -> np.ndarray:
        return PSI_PLUS if self.signs[0] * self.signs[1] > 0 else PSI_MINUS

    @property
    def fidelity(self) -> float:
        return float((self.target.conj() @ self.final @ self.target).real)


def protocol_branches(eta: float, model: DistinguishabilityModel = DistinguishabilityModel(),
                      deltas: tuple[float, float] = (0.0, 0.0),
                      initial: np.ndarray | None = None) -> list[ProtocolBranch]:
    """All successful (single click, single click) histories, exactly.

    Between rounds both qubits are bit flipped; after round two they are
    flipped back so the successful map is E_{s1*s2} in the original labels.
    """
    psi0 = np.full(4, 0.5, dtype=complex) if initial is None else np.asarray(initial, dtype=complex)
    out = []
    for r1 in herald_branches(psi0, eta, model, deltas[0], 1):
        if r1.sign is None or r1.conditional is None:
            continue
        flipped = FLIP @ r1.conditional @ FLIP
        for r2 in herald_branches(flipped, eta, model, deltas[1], 2):
            if r2.sign is None or r2.conditional is None:
                continue
            final = FLIP @ r2.conditional @ FLIP
            out.append(ProtocolBranch((r1.sign, r2.sign), r1.probability * r2.probability, final))
    return out


@lru_cache(maxsize=256)
def _cached_tree(eta: float, overlap: float, d1: float, d2: float):
    model = DistinguishabilityModel(overlap)
    rounds1 = herald_branches(np.full(4, 0.5), eta, model, d1, 1)
    tree = []
    for r1 in rounds1:
        if r1.sign is None or r1.conditional is None:
            tree.append((r1, None))
            continue
        tree.append((r1, herald_branches(FLIP @ r1.conditional @ FLIP, eta, model, d2, 2)))
    return tree


def dh_protocol(eta: float, model: DistinguishabilityModel, rng: np.random.Generator,
                deltas: tuple[float, float] = (0.0, 0.0)) -> tuple[bool, np.ndarray | None, float]:
    """One sampled run from |+,+>.

    Returns (success, final qubit density or None, probability of the sampled
    history).
    """
    tree = _cached_tree(float(eta), float(model.overlap), float(deltas[0]), float(deltas[1]))
    p1 = np.array([r.probability for r, _ in tree])
    r1, second = tree[int(rng.choice(len(tree), p=p1 / p1.sum()))]
    if second is None:
        return False, None, r1.probability
    p2 = np.array([r.probability for r in second])
    r2 = second[int(rng.choice(len(second), p=p2 / p2.sum()))]
    prob = r1.probability * r2.probability
    if r2.sign is None or r2.conditional is None:
        return False, None, prob
    return True, FLIP @ r2.conditional @ FLIP, prob


def bell_fidelity(final: np.ndarray, signs_product: int | None = None) -> float:
    """Fidelity with Psi+ or Psi-; the larger one if the sign is not given."""
    f_plus = float((PSI_PLUS.conj() @ final @ PSI_PLUS).real)
    f_minus = float((PSI_MINUS.conj() @ final @ PSI_MINUS).real)
    if signs_product is None:
        return max(f_plus, f_minus)
    return f_plus if signs_product > 0 else f_minus


@dataclass(frozen=True)
class SweepRow:
    eta: float
    overlap: float
    trials: int
    successes: int
    mean_fidelity: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials


def simulate(eta: float, overlap: float, trials: int, seed: int) -> SweepRow:
    """Monte Carlo success rate with one spawned stream per trial."""
    model = DistinguishabilityModel(overlap)
    successes = 0
    fid_sum = 0.0
    for rng in trial_generators(seed, trials):
        ok, final, _ = dh_protocol(eta, model, rng)
        if ok:
            successes += 1
            fid_sum += bell_fidelity(final)
    return SweepRow(eta, overlap, trials, successes, fid_sum / successes if successes else float("nan"))


def success_probability(eta: float, overlap: float = 1.0) -> float:
    return sum(b.probability for b in protocol_branches(eta, DistinguishabilityModel(overlap)))


def mean_success_fidelity(eta: float, overlap: float = 1.0, deltas=(0.0, 0.0)) -> float:
    branches = protocol_branches(eta, DistinguishabilityModel(overlap), deltas)
    total = sum(b.probability for b in branches)
    return sum(b.probability * b.fidelity for b in branches) / total


def phase_robustness(delta: float, eta: float = 1.0, delta_second: float | None = None) -> float:
    """Worst successful-branch Bell fidelity with a phase on port ``b``.

    The same ``delta`` acts in both rounds unless ``delta_second`` is given.
    """
    d2 = delta if delta_second is None else delta_second
    branches = protocol_branches(eta, DistinguishabilityModel(1.0), (delta, d2))
    return min(b.fidelity for b in branches)


def projector_check(state: np.ndarray) -> dict:
    """Compare the ideal protocol's conditional map with E+/- on a pure input.

    Returns, per sign product, the fidelity between the simulated output and
    E_sign |state> (normalized) and the relative weight ||E_sign |state>||^2.
    """
    psi = np.asarray(state, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    report = {}
    for b in protocol_branches(1.0, DistinguishabilityModel(1.0), initial=psi):
        sign = b.signs[0] * b.signs[1]
        e = np.diag([0, 1, sign, 0]).astype(complex)
        target = e @ psi
        weight = float(np.vdot(target, target).real)
        fid = float((target.conj() @ b.final @ target).real / weight) if weight > 0 else float("nan")
        entry = report.setdefault(sign, {"fidelity": fid, "weight": weight, "probability": 0.0})
        entry["fidelity"] = min(entry["fidelity"], fid)
        entry["probability"] += b.probability
    return report


def round_one_support_error(eta: float) -> float:
    """Largest weight of the round-one heralded state outside span{Psi+-, |up,up>}."""
    basis = np.stack([PSI_PLUS, PSI_MINUS, UP_UP], axis=1)
    proj = basis @ basis.conj().T
    worst = 0.0
    for r in herald_branches(np.full(4, 0.5), eta):
        if r.sign is None or r.conditional is None:
            continue
        outside = np.eye(4) - proj
        worst = max(worst, float(np.abs(outside @ r.conditional @ outside).max()))
    return worst


def round_one_f(eta: float, sign: int = +1) -> float:
    """Entangled weight f of the heralded round-one state, read off the simulation."""
    for r in herald_branches(np.full(4, 0.5), eta):
        if r.sign == sign and r.conditional is not None:
            target = PSI_PLUS if sign > 0 else PSI_MINUS
            return float((target.conj() @ r.conditional @ target).real)
    raise ValueError("no heralded branch")


def round_two_click_sources(eta: float) -> dict[str, dict[tuple[int, int], float]]:
    """Round-two click statistics split by the two parts of the round-one state.

    The entangled part can only ever produce single clicks; the flipped
    |up,up> part becomes |down,down> and produces no photons at all.
    """
    r1 = next(r for r in herald_branches(np.full(4, 0.5), eta) if r.sign == +1)
    f = float((PSI_PLUS.conj() @ r1.conditional @ PSI_PLUS).real)
    parts = {"entangled": f * np.outer(PSI_PLUS, PSI_PLUS.conj()),
             "separable": (1 - f) * np.outer(UP_UP, UP_UP.conj())}
    out = {}
    for name, part in parts.items():
        weight = np.trace(part).real
        stats = {}
        for r in herald_branches(FLIP @ part @ FLIP, eta, round_index=2):
            stats[r.signature] = weight * r.probability
        out[name] = stats
    return out
