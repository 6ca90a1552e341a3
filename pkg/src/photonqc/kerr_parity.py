"""Parity measurement with a weak cross-Kerr phase and a coherent probe.

Two qubits each imprint a small phase on a coherent probe ``|alpha>``: the
first with ``+theta`` and the second with ``-theta``.  Even-parity terms
leave the probe at ``|alpha>``; odd terms rotate it to ``|alpha e^{+-i theta}>``.
Measuring the probe's x quadrature tells the two apart once the peaks at
``x_e = sqrt2 alpha`` and ``x_o = sqrt2 alpha cos(theta)`` are well separated.

Coherent states are kept symbolically as a label ``s`` in {-1, 0, +1}
(probe ``|alpha e^{i s theta}>``), so any ``alpha`` is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from .errors import LabelOverflow
from .fock_core import H, V, ModeLayout, PureState
from .qubits import CZ

QUBIT_LABELS = ("00", "01", "10", "11")
INV_PI_QUARTER = math.pi ** -0.25


@dataclass(frozen=True)
class HybridState:
    """Two-qubit amplitudes, each attached to a probe label ``s``."""

    amplitudes: tuple[complex, complex, complex, complex]
    labels: tuple[int, int, int, int]
    alpha: float
    theta: float

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be real and non-negative")
        if any(s not in (-1, 0, 1) for s in self.labels):
            raise LabelOverflow(f"probe labels {self.labels} outside {{-1, 0, 1}}")

    @classmethod
    def initial(cls, psi, alpha: float, theta: float) -> "HybridState":
        v = np.asarray(psi, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(tuple(complex(c) for c in v), (0, 0, 0, 0), float(alpha), float(theta))

    def probe(self, s: int) -> complex:
        return self.alpha * np.exp(1j * s * self.theta)

    def norm2(self) -> float:
        """Exact norm including coherent-state overlaps.

        Distinct qubit labels are orthogonal, so only diagonal probe overlaps
        (which equal 1) contribute; the general formula is kept for clarity.
        """
        total = 0j
        for i, (ci, si) in enumerate(zip(self.amplitudes, self.labels)):
            for j, (cj, sj) in enumerate(zip(self.amplitudes, self.labels)):
                if i == j:
                    total += np.conj(ci) * cj * coherent_overlap(self.probe(si), self.probe(sj))
        return float(total.real)


def coherent_overlap(beta: complex, gamma: complex) -> complex:
    """<beta|gamma> for coherent states, written to stay exact at large amplitude."""
    return complex(np.exp(-abs(beta - gamma) ** 2 / 2 + 1j * (np.conj(beta) * gamma).imag))


def cross_kerr(state: HybridState, control_qubit: int, sign: int) -> HybridState:
    """Shift the probe label by ``sign`` on terms whose ``control_qubit`` is 1."""
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    labels = []
    for lab, s in zip(QUBIT_LABELS, state.labels):
        new = s + sign if lab[control_qubit] == "1" else s
        if new not in (-1, 0, 1):
            raise LabelOverflow(f"probe label {new} for term {lab}")
        labels.append(new)
    return HybridState(state.amplitudes, tuple(labels), state.alpha, state.theta)


def entangle_probe(psi, alpha: float, theta: float) -> HybridState:
    """Both interactions: +theta from the first qubit, -theta from the second."""
    st = HybridState.initial(psi, alpha, theta)
    return cross_kerr(cross_kerr(st, 0, +1), 1, -1)


def log_x_overlap(x: float, s: int, alpha: float, theta: float) -> complex:
    """Exponent of <x|alpha e^{i s theta}> without the pi^{-1/4} prefactor."""
    th = s * theta
    c, sn = math.cos(th), math.sin(th)
    return -0.5 * (x - math.sqrt(2) * alpha * c) ** 2 + 1j * alpha * sn * (math.sqrt(2) * x - alpha * c)


def x_overlap(x: float, s: int, alpha: float, theta: float) -> complex:
    """<x|alpha e^{i s theta}> for real alpha."""
    return INV_PI_QUARTER * np.exp(log_x_overlap(x, s, alpha, theta))


def x_overlap_general(x: float, beta: complex) -> complex:
    """<x|beta> for any complex beta, from the standard coherent-state wavefunction."""
    return INV_PI_QUARTER * np.exp(-x * x / 2 + math.sqrt(2) * beta * x - beta * beta / 2 - abs(beta) ** 2 / 2)


def phi(x: float, alpha: float, theta: float) -> float:
    """Phase picked up by the odd terms at outcome x: alpha sin(theta) (sqrt2 x - alpha cos(theta))."""
    return alpha * math.sin(theta) * (math.sqrt(2) * x - alpha * math.cos(theta))


def peaks(alpha: float, theta: float) -> tuple[float, float]:
    """(x_e, x_o)."""
    return math.sqrt(2) * alpha, math.sqrt(2) * alpha * math.cos(theta)


def separation(alpha: float, theta: float) -> float:
    return 2 * math.sqrt(2) * alpha * math.sin(theta / 2) ** 2


def alpha_for_separation(sep: float, theta: float) -> float:
    """Probe amplitude giving x_e - x_o = sep (uses 1 - cos = 2 sin^2 for tiny theta)."""
    return sep / (2 * math.sqrt(2) * math.sin(theta / 2) ** 2)


def condition_on_x(state: HybridState, x: float) -> tuple[np.ndarray, float]:
    """Unnormalized two-qubit state <x|psi> and the density p(x) = ||<x|psi>||^2."""
    vec = np.array([c * x_overlap(x, s, state.alpha, state.theta)
                    for c, s in zip(state.amplitudes, state.labels)])
    return vec, float(np.vdot(vec, vec).real)


def condition_on_x_factored(state: HybridState, x: float) -> np.ndarray:
    """Same state written as an even part times <x|alpha> and an odd part with explicit phases."""
    c00, c01, c10, c11 = state.amplitudes
    a, th = state.alpha, state.theta
    even = x_overlap(x, 0, a, th)
    odd = abs(x_overlap(x, 1, a, th))
    p = phi(x, a, th)
    return np.array([even * c00, odd * c01 * np.exp(-1j * p), odd * c10 * np.exp(1j * p), even * c11])


def mixture(state: HybridState) -> list[tuple[float, float]]:
    """p(x) as a list of (weight, mean) for Gaussians of variance 1/2.

    Different qubit labels are orthogonal, so p(x) has no interference terms.
    """
    comps: dict[float, float] = {}
    for c, s in zip(state.amplitudes, state.labels):
        mean = math.sqrt(2) * state.alpha * math.cos(s * state.theta)
        comps[mean] = comps.get(mean, 0.0) + abs(c) ** 2
    total = sum(comps.values())
    return [(w / total, m) for m, w in sorted(comps.items()) if w > 0]


def density(state: HybridState, x: float) -> float:
    return condition_on_x(state, x)[1] / state.norm2()


@dataclass(frozen=True)
class QuadratureOutcome:
    x: float
    parity_label: str
    correction_phase: float


def threshold(alpha: float, theta: float) -> float:
    xe, xo = peaks(alpha, theta)
    return 0.5 * (xe + xo)


def classify(x: float, alpha: float, theta: float) -> str:
    return "even" if x >= threshold(alpha, theta) else "odd"


def sample_x(state: HybridState, rng: np.random.Generator) -> QuadratureOutcome:
    comps = mixture(state)
    weights = np.array([w for w, _ in comps])
    k = int(rng.choice(len(comps), p=weights / weights.sum()))
    x = float(rng.normal(comps[k][1], math.sqrt(0.5)))
    return QuadratureOutcome(x, classify(x, state.alpha, state.theta), phi(x, state.alpha, state.theta))


def correct(vec: np.ndarray, phase: float) -> np.ndarray:
    """Undo the odd-branch phases: e^{+i phi} on 01, e^{-i phi} on 10."""
    out = np.array(vec, dtype=complex)
    out[1] *= np.exp(1j * phase)
    out[2] *= np.exp(-1j * phase)
    return out


def conditional_state(state: HybridState, x: float) -> np.ndarray:
    vec, _ = condition_on_x(state, x)
    vec = correct(vec, phi(x, state.alpha, state.theta))
    return vec / np.linalg.norm(vec)


def ideal_projection(psi, parity: str) -> np.ndarray | None:
    v = np.asarray(psi, dtype=complex)
    mask = np.array([1, 0, 0, 1]) if parity == "even" else np.array([0, 1, 1, 0])
    proj = v * mask
    n = np.linalg.norm(proj)
    return None if n == 0 else proj / n


def parity_gate(psi, alpha: float, theta: float, rng: np.random.Generator) -> tuple[str, np.ndarray, float]:
    """Entangle with the probe, sample x, correct the odd phases.

    Returns the parity label, the normalized corrected two-qubit state and x.
    """
    st = entangle_probe(psi, alpha, theta)
    out = sample_x(st, rng)
    return out.parity_label, conditional_state(st, out.x), out.x


def projection_fidelity(psi, alpha: float, theta: float, x: float) -> float:
    """Fidelity of the corrected state at outcome x with the projection its label predicts."""
    st = entangle_probe(psi, alpha, theta)
    target = ideal_projection(psi, classify(x, alpha, theta))
    if target is None:
        return 0.0
    return float(abs(np.vdot(target, conditional_state(st, x))) ** 2)


def mean_gate_fidelity(psi, alpha: float, theta: float) -> float:
    """Average over p(x) of the projection fidelity, by numerical integration."""
    st = entangle_probe(psi, alpha, theta)
    xe, xo = peaks(alpha, theta)
    mid = threshold(alpha, theta)

    def integrand(x):
        vec, p = condition_on_x(st, x)
        target = ideal_projection(psi, classify(x, alpha, theta))
        if target is None or p == 0:
            return 0.0
        vec = correct(vec, phi(x, alpha, theta))
        return abs(np.vdot(target, vec)) ** 2

    lo, hi = min(xo, xe) - 12, max(xo, xe) + 12
    pts = sorted({lo, mid, hi})
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        total += integrate.quad(integrand, a, b, limit=200, epsabs=1e-13, epsrel=1e-12)[0]
    return total / st.norm2()


def closed_form_mean_fidelity(sep: float) -> float:
    """Mean fidelity for equal even/odd weight: 1 - erfc(sep/2)/2."""
    return 1 - 0.5 * special.erfc(sep / 2)


def misidentification_probability(sep: float) -> float:
    """Tail mass of one variance-1/2 Gaussian beyond the midpoint."""
    return 0.5 * special.erfc(sep / 2)


def normalization_integral(state: HybridState) -> float:
    xe, xo = peaks(state.alpha, state.theta)
    lo, hi = min(xe, xo) - 10, max(xe, xo) + 10
    return integrate.quad(lambda x: density(state, x), lo, hi, limit=200, epsabs=1e-13)[0]


def peak_location(s: int, alpha: float, theta: float) -> float:
    """argmax of |<x|alpha e^{i s theta}>|^2 by golden-section search.

    The search runs on the log-modulus so the flat top of the peak does not
    limit the resolution to sqrt(machine epsilon).
    """
    center = math.sqrt(2) * alpha * math.cos(s * theta)
    res = optimize.minimize_scalar(lambda u: -log_x_overlap(center + u, s, alpha, theta).real,
                                   bracket=(-3.0, 0.1, 3.0), method="golden", tol=1e-12)
    return center + float(res.x)


def monte_carlo_error_rate(alpha: float, theta: float, trials: int, rng: np.random.Generator) -> float:
    """Misidentification frequency for an equal mixture of even and odd inputs."""
    xe, xo = peaks(alpha, theta)
    odd = rng.random(trials) < 0.5
    x = np.where(odd, xo, xe) + rng.normal(0.0, math.sqrt(0.5), trials)
    called_even = x >= threshold(alpha, theta)
    return float(np.mean(called_even == odd))


# ---------------------------------------------------------------------------
# strong Kerr limit

def strong_kerr_gate(tau: float = math.pi) -> np.ndarray:
    """Two polarization qubits whose V components meet in a Kerr medium.

    Each term picks up ``exp(i tau n_aV n_bV)``; returns the 4x4 action on
    qubit basis |HH>, |HV>, |VH>, |VV> computed through Fock states.
    """
    layout = ModeLayout.of("ab", polarized=True)
    cols = []
    for qa in (H, V):
        for qb in (H, V):
            occ = [0, 0, 0, 0]
            occ[layout.index("a", qa)] = 1
            occ[layout.index("b", qb)] = 1
            st = PureState.basis(layout, occ)
            out = {k: v * np.exp(1j * tau * k[layout.index("a", V)] * k[layout.index("b", V)])
                   for k, v in st.terms.items()}
            cols.append(PureState(layout, out))
    basis = [next(iter(c.terms)) for c in cols]
    return np.array([[c.amplitude(b) for c in cols] for b in basis])


def strong_kerr_cz_error(tau: float = math.pi) -> float:
    return float(np.abs(strong_kerr_gate(tau) - CZ).max())


def kerr_heisenberg_error(tau: float, cutoff: int = 4) -> float:
    """max |U^dag a U - a exp(i tau n_b)| for U = exp(i tau n_a n_b) on a truncated space."""
    a1 = np.diag(np.sqrt(np.arange(1, cutoff + 1)), 1)
    n1 = np.diag(np.arange(cutoff + 1)).astype(complex)
    eye = np.eye(cutoff + 1)
    a = np.kron(a1, eye)
    na, nb = np.kron(n1, eye), np.kron(eye, n1)
    u = np.diag(np.exp(1j * tau * np.diag(na @ nb)))
    lhs = u.conj().T @ a @ u
    rhs = a @ np.diag(np.exp(1j * tau * np.diag(nb)))
    return float(np.abs(lhs - rhs).max())
