"""CZ gate from the quantum Zeno effect.

Two optical modes are coupled by ``n`` weak beam-splitter steps of angle
``theta = pi/(2n)``.  After every step a two-photon absorber on each mode
removes any doubly occupied component, so ``|11>`` is frozen while a single
photon hops across with phase ``i``.  Everything lives on the six two-mode
Fock states with at most two photons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linear_optics import beam_splitter, element_matrix, interferometer_matrix
from .qubits import CZ

BASIS: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (0, 2))
QUBIT_DIM = 4
DIM = len(BASIS)
_INDEX = {b: i for i, b in enumerate(BASIS)}


@dataclass(frozen=True)
class TwoModeDensity:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (DIM, DIM):
            raise ValueError(f"expected a {DIM}x{DIM} matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def pure(cls, occ_or_vec) -> "TwoModeDensity":
        if isinstance(occ_or_vec, tuple) and len(occ_or_vec) == 2 and all(isinstance(n, int) for n in occ_or_vec):
            vec = np.zeros(DIM, dtype=complex)
            vec[_INDEX[occ_or_vec]] = 1
        else:
            vec = np.asarray(occ_or_vec, dtype=complex)
            if vec.shape == (QUBIT_DIM,):
                vec = np.concatenate([vec, np.zeros(DIM - QUBIT_DIM)])
        return cls(np.outer(vec, vec.conj()))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def population(self, occ: tuple[int, int]) -> float:
        return float(self.matrix[_INDEX[occ], _INDEX[occ]].real)

    def check(self, tol: float = 1e-10) -> None:
        m = self.matrix
        if np.abs(m - m.conj().T).max() > tol:
            raise ValueError("density matrix is not Hermitian")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -tol:
            raise ValueError("density matrix is not positive")


@dataclass(frozen=True)
class ZenoConfig:
    n: int
    two_photon_efficiency: float = 1.0
    single_photon_loss: float = 0.0
    theta: float = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.two_photon_efficiency <= 1 or not 0 <= self.single_photon_loss <= 1:
            raise ValueError("absorber parameters must lie in [0, 1]")
        object.__setattr__(self, "theta", math.pi / (2 * self.n))

    @property
    def ideal(self) -> bool:
        return self.two_photon_efficiency == 1.0 and self.single_photon_loss == 0.0


def step_unitary(theta: float) -> np.ndarray:
    """Splitter ``[[cos, i sin], [i sin, cos]]`` lifted to the six Fock states."""
    u = element_matrix(beam_splitter(0, 1, theta, 0.0))
    m = interferometer_matrix(u, BASIS)
    if np.abs(m.conj().T @ m - np.eye(DIM)).max() > 1e-12:
        raise AssertionError("Fock-space step is not unitary")
    return m


def bs_step(rho: TwoModeDensity, theta: float) -> TwoModeDensity:
    u = step_unitary(theta)
    return TwoModeDensity(u @ rho.matrix @ u.conj().T)


def single_mode_kraus(two_photon_efficiency: float = 1.0, single_photon_loss: float = 0.0) -> list[np.ndarray]:
    """Absorber Kraus operators on span{|0>, |1>, |2>}.

    The ideal absorber has ``A1 = |0><0| + |1><1|`` and ``A2 = |0><2|``.
    """
    k, g = two_photon_efficiency, single_photon_loss
    a1 = np.diag([1.0, math.sqrt(1 - g), math.sqrt(1 - k)]).astype(complex)
    a2 = np.zeros((3, 3), dtype=complex)
    a2[0, 2] = math.sqrt(k)
    ops = [a1, a2]
    if g > 0:
        a3 = np.zeros((3, 3), dtype=complex)
        a3[0, 1] = math.sqrt(g)
        ops.append(a3)
    return ops


def kraus_completeness_error(ops: list[np.ndarray]) -> float:
    total = sum(a.conj().T @ a for a in ops)
    return float(np.abs(total - np.eye(total.shape[0])).max())


def two_mode_kraus(config: ZenoConfig | None = None) -> list[np.ndarray]:
    """Products of the single-mode operators, acting on the six-state basis."""
    kw = {} if config is None else dict(two_photon_efficiency=config.two_photon_efficiency,
                                        single_photon_loss=config.single_photon_loss)
    single = single_mode_kraus(**kw)
    ops = []
    for a in single:
        for b in single:
            m = np.zeros((DIM, DIM), dtype=complex)
            for j, (n0, n1) in enumerate(BASIS):
                for m0 in range(3):
                    for m1 in range(3):
                        c = a[m0, n0] * b[m1, n1]
                        if c != 0:
                            m[_INDEX[(m0, m1)], j] += c
            if np.any(m):
                ops.append(m)
    return ops


def absorb(rho: TwoModeDensity, config: ZenoConfig | None = None) -> TwoModeDensity:
    out = sum(k @ rho.matrix @ k.conj().T for k in two_mode_kraus(config))
    return TwoModeDensity(out)


def _superoperator(ops: list[np.ndarray]) -> np.ndarray:
    """Row-major vectorization: vec(K rho K^dag) = (K kron K*) vec(rho)."""
    return sum(np.kron(k, k.conj()) for k in ops)


def step_superoperator(config: ZenoConfig) -> np.ndarray:
    u = step_unitary(config.theta)
    return _superoperator(two_mode_kraus(config)) @ _superoperator([u])


def zeno_evolve(rho0: TwoModeDensity, config: ZenoConfig) -> TwoModeDensity:
    """``n`` rounds of splitter step followed by absorption (matrix-power form)."""
    s = np.linalg.matrix_power(step_superoperator(config), config.n)
    return TwoModeDensity((s @ rho0.matrix.reshape(-1)).reshape(DIM, DIM))


def zeno_evolve_iterated(rho0: TwoModeDensity, config: ZenoConfig) -> TwoModeDensity:
    """Same evolution applied one step at a time; used as a cross-check."""
    rho = rho0
    for _ in range(config.n):
        rho = absorb(bs_step(rho, config.theta), config)
    return rho


def survival_closed_form(n: int) -> float:
    """Probability that ``|11>`` survives all n absorber rounds: cos^{2n}(pi/n)."""
    return math.cos(math.pi / n) ** (2 * n)


def two_photon_loss(n: int) -> float:
    return 1 - survival_closed_form(n)


# mode swap followed by a -pi/2 phase on each mode
SWAP_MODES = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
PHASE_CORRECTION = np.diag([1, -1j, -1j, -1])
U_ZENO = np.diag([1, 1j, 1j, 1])


@dataclass(frozen=True)
class GateReport:
    n: int
    superoperator: np.ndarray
    corrected_superoperator: np.ndarray
    survival: float
    process_fidelity: float
    zeno_fidelity: float

    def to_json(self) -> dict:
        return {"n": self.n, "survival": self.survival, "process_fidelity": self.process_fidelity,
                "zeno_fidelity": self.zeno_fidelity}


def qubit_superoperator(config: ZenoConfig) -> np.ndarray:
    """16x16 map on the qubit block, built from the images of the 16 matrix units."""
    full = np.linalg.matrix_power(step_superoperator(config), config.n)
    cols = []
    for i in range(QUBIT_DIM):
        for j in range(QUBIT_DIM):
            unit = np.zeros((DIM, DIM), dtype=complex)
            unit[i, j] = 1
            out = (full @ unit.reshape(-1)).reshape(DIM, DIM)
            cols.append(out[:QUBIT_DIM, :QUBIT_DIM].reshape(-1))
    return np.array(cols).T


def process_fidelity(superop: np.ndarray, target: np.ndarray) -> float:
    """Tr(S_U^dag S) / d^2 for a 4x4 target unitary."""
    d = target.shape[0]
    s_target = np.kron(target, target.conj())
    return float(np.trace(s_target.conj().T @ superop).real / d ** 2)


def effective_gate(config: ZenoConfig) -> GateReport:
    raw = qubit_superoperator(config)
    fix = PHASE_CORRECTION @ SWAP_MODES
    corrected = np.kron(fix, fix.conj()) @ raw
    swapped = np.kron(SWAP_MODES, SWAP_MODES) @ raw
    survival = float(zeno_evolve(TwoModeDensity.pure((1, 1)), config).population((1, 1)))
    return GateReport(config.n, raw, corrected, survival,
                      process_fidelity(corrected, CZ), process_fidelity(swapped, U_ZENO))


def ideal_process_fidelity(n: int) -> float:
    """(3 + cos^n(pi/n))^2 / 16: the only defect is the damped |11> amplitude."""
    return (3 + math.cos(math.pi / n) ** n) ** 2 / 16
