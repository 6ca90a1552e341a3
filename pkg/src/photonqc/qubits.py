"""Dense qubit gates and small helpers shared by the qubit-level modules."""

from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}

CZ = np.diag([1, 1, 1, -1]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def rz(alpha: float) -> np.ndarray:
    """Z(alpha) = exp(i alpha Z / 2)."""
    return np.diag([np.exp(0.5j * alpha), np.exp(-0.5j * alpha)])


def rx(beta: float) -> np.ndarray:
    """X(beta) = exp(i beta X / 2)."""
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    return np.array([[c, 1j * s], [1j * s, c]])


def euler_rotation(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return rz(gamma) @ rx(beta) @ rz(alpha)


def kron(*ops: np.ndarray) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def pauli_power(x: int, z: int) -> np.ndarray:
    """X^x Z^z."""
    return np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)


def state_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 for normalized vectors."""
    return float(abs(np.vdot(a, b)) ** 2)


def random_qubit(rng: np.random.Generator, n: int = 1) -> np.ndarray:
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits."""
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def reduced_first_qubit(psi: np.ndarray) -> np.ndarray:
    m = np.asarray(psi).reshape(2, -1)
    return m @ m.conj().T
