"""Passive linear optics on Fock states.

Convention: an interferometer ``U`` maps creation operators row-wise,
``a_j^dag -> sum_k U[j, k] a_k^dag``.  A state is transformed by writing each
basis term as a product of creation operators on the vacuum, substituting,
and expanding.  With this convention a single photon in mode ``j`` ends up in
mode ``k`` with amplitude ``U[j, k]``, and applying ``U`` then ``V`` equals
applying the product ``U @ V``.  :func:`circuit_unitary` multiplies element
matrices in list order accordingly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import unitary_group

from .errors import (InvalidEncoding, InvalidSpec, NotUnitary, PhotonNumberMismatch,
                     TruncationExceeded)
from .fock_core import H, V, ModeLayout, Occupation, PureState, project

UNITARY_TOL = 1e-10

KINDS = ("phase", "beam_splitter", "polarization_rotation", "pbs", "mirror")
_MODE_COUNT = {"phase": 1, "beam_splitter": 2, "polarization_rotation": 2, "pbs": 4, "mirror": 2}
_JSON_KIND = {"phase": "phase", "beam_splitter": "bs", "polarization_rotation": "polrot",
              "pbs": "pbs", "mirror": "mirror"}
_FROM_JSON_KIND = {v: k for k, v in _JSON_KIND.items()} | {k: k for k in KINDS}


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotUnitary(f"matrix of shape {m.shape} is not square")
        err = np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])), initial=0.0)
        if err > UNITARY_TOL:
            raise NotUnitary(f"U U^dag deviates from identity by {err:.3g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dims(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "ModeUnitary") -> "ModeUnitary":
        return ModeUnitary(self.matrix @ other.matrix)

    @classmethod
    def identity(cls, n: int) -> "ModeUnitary":
        return cls(np.eye(n))


@dataclass(frozen=True)
class ElementSpec:
    """One optical element acting on the listed flat modes.

    ``pbs`` takes four modes ordered (a_H, a_V, b_H, b_V) and exchanges the
    vertical components of the two spatial modes.
    """

    kind: str
    modes: tuple[int, ...]
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown element kind {self.kind!r}")
        modes = tuple(int(m) for m in self.modes)
        if len(modes) != _MODE_COUNT[self.kind]:
            raise InvalidSpec(f"{self.kind} needs {_MODE_COUNT[self.kind]} modes, got {modes}")
        if len(set(modes)) != len(modes) or min(modes) < 0:
            raise InvalidSpec(f"modes must be distinct non-negative indices: {modes}")
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise InvalidSpec("angles must be finite")
        object.__setattr__(self, "modes", modes)

    def to_json(self) -> dict:
        return {"kind": _JSON_KIND[self.kind], "theta": self.theta, "phi": self.phi, "modes": list(self.modes)}

    @classmethod
    def from_json(cls, data: Mapping) -> "ElementSpec":
        try:
            kind = _FROM_JSON_KIND[data["kind"]]
        except KeyError:
            raise InvalidSpec(f"unknown element kind in {dict(data)!r}") from None
        return cls(kind, tuple(data["modes"]), float(data.get("theta", 0.0)), float(data.get("phi", 0.0)))


def phase(mode: int, phi: float) -> ElementSpec:
    return ElementSpec("phase", (mode,), phi=phi)


def beam_splitter(a: int, b: int, theta: float, phi: float = 0.0) -> ElementSpec:
    return ElementSpec("beam_splitter", (a, b), theta, phi)


def polarization_rotation(h: int, v: int, theta: float, phi: float = 0.0) -> ElementSpec:
    return ElementSpec("polarization_rotation", (h, v), theta, phi)


def pbs(a_h: int, a_v: int, b_h: int, b_v: int) -> ElementSpec:
    return ElementSpec("pbs", (a_h, a_v, b_h, b_v))


def mirror(a: int, b: int) -> ElementSpec:
    return ElementSpec("mirror", (a, b))


def fifty_fifty(a: int, b: int) -> list[ElementSpec]:
    """Symmetric 50:50 splitter a -> (c+d)/sqrt2, b -> (c-d)/sqrt2.

    Realized as a pi phase on ``b`` followed by the theta=pi/4, phi=pi/2
    splitter, whose product is [[1, 1], [1, -1]]/sqrt2.
    """
    return [phase(b, math.pi), beam_splitter(a, b, math.pi / 4, math.pi / 2)]


def rotate_45(h: int, v: int) -> list[ElementSpec]:
    """Polarization rotation H -> (H+V)/sqrt2, V -> (H-V)/sqrt2."""
    return [phase(v, math.pi), polarization_rotation(h, v, math.pi / 4, math.pi / 2)]


def _two_mode(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 1j * np.exp(-1j * phi) * s], [1j * np.exp(1j * phi) * s, c]])


def element_matrix(spec: ElementSpec) -> ModeUnitary:
    """Local matrix of an element, indexed by position in ``spec.modes``."""
    if spec.kind == "phase":
        return ModeUnitary(np.array([[np.exp(1j * spec.phi)]]))
    if spec.kind in ("beam_splitter", "polarization_rotation"):
        return ModeUnitary(_two_mode(spec.theta, spec.phi))
    if spec.kind == "mirror":
        return ModeUnitary(_two_mode(math.pi / 2, 0.0))
    perm = np.zeros((4, 4))
    for src, dst in ((0, 0), (1, 3), (2, 2), (3, 1)):
        perm[src, dst] = 1
    return ModeUnitary(perm)


def embed(spec: ElementSpec, n_modes: int) -> ModeUnitary:
    if max(spec.modes) >= n_modes:
        raise InvalidSpec(f"element modes {spec.modes} exceed register of {n_modes} modes")
    full = np.eye(n_modes, dtype=complex)
    local = element_matrix(spec).matrix
    idx = np.array(spec.modes)
    full[np.ix_(idx, idx)] = local
    return ModeUnitary(full)


def circuit_unitary(specs: Sequence[ElementSpec], n_modes: int) -> ModeUnitary:
    """Overall matrix of elements applied in list order."""
    total = np.eye(n_modes, dtype=complex)
    for spec in specs:
        total = total @ embed(spec, n_modes).matrix
    return ModeUnitary(total)


# ---------------------------------------------------------------------------
# applying interferometers

def _monomial_state(exponents: Occupation, coef: complex) -> tuple[Occupation, complex]:
    norm = math.prod(math.factorial(m) for m in exponents)
    return exponents, coef * math.sqrt(norm)


def _transform_basis_term(occ: Occupation, u: np.ndarray) -> dict[Occupation, complex]:
    n = len(occ)
    poly: dict[Occupation, complex] = {(0,) * n: 1.0 / math.sqrt(math.prod(math.factorial(k) for k in occ))}
    for j, count in enumerate(occ):
        row = u[j]
        nonzero = [k for k in range(n) if row[k] != 0]
        for _ in range(count):
            nxt: dict[Occupation, complex] = {}
            for mono, c in poly.items():
                for k in nonzero:
                    key = mono[:k] + (mono[k] + 1,) + mono[k + 1:]
                    nxt[key] = nxt.get(key, 0j) + c * row[k]
            poly = nxt
    return dict(_monomial_state(m, c) for m, c in poly.items())


def apply_interferometer(state: PureState, u: ModeUnitary | np.ndarray) -> PureState:
    if not isinstance(u, ModeUnitary):
        u = ModeUnitary(u)
    if u.dims != state.layout.mode_count:
        raise InvalidSpec(f"unitary has {u.dims} modes, state has {state.layout.mode_count}")
    m = u.matrix
    out: dict[Occupation, complex] = {}
    for occ, amp in state.terms.items():
        for new, c in _transform_basis_term(occ, m).items():
            out[new] = out.get(new, 0j) + amp * c
    eps = state.truncation.prune_epsilon
    for occ, a in out.items():
        if abs(a) > eps and not state.truncation.allows(occ):
            raise TruncationExceeded(f"output occupation {occ} violates {state.truncation}")
    return state._with({k: v for k, v in out.items() if abs(v) > eps})


def apply_circuit(state: PureState, specs: Sequence[ElementSpec]) -> PureState:
    return apply_interferometer(state, circuit_unitary(specs, state.layout.mode_count))


def _permanent(m: np.ndarray) -> complex:
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0j
    return complex(sum(math.prod(m[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n))))


def amplitude_oracle(inp: Sequence[int], out: Sequence[int], u: ModeUnitary | np.ndarray) -> complex:
    """<out| U |in> by brute-force permanent; independent of :func:`apply_interferometer`."""
    mat = u.matrix if isinstance(u, ModeUnitary) else np.asarray(u, dtype=complex)
    if sum(inp) != sum(out):
        raise PhotonNumberMismatch(f"{tuple(inp)} and {tuple(out)} hold different photon numbers")
    rows = [j for j, n in enumerate(inp) for _ in range(n)]
    cols = [k for k, n in enumerate(out) for _ in range(n)]
    norm = math.prod(math.factorial(n) for n in inp) * math.prod(math.factorial(n) for n in out)
    return _permanent(mat[np.ix_(rows, cols)]) / math.sqrt(norm)


def interferometer_matrix(u: ModeUnitary | np.ndarray, basis: Sequence[Occupation]) -> np.ndarray:
    """Dense Fock-space representation ``M[out, in]`` on a photon-number-closed basis."""
    mat = u.matrix if isinstance(u, ModeUnitary) else np.asarray(u, dtype=complex)
    index = {b: i for i, b in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    for j, occ in enumerate(basis):
        for new, c in _transform_basis_term(tuple(occ), mat).items():
            if abs(c) > 1e-15:
                if new not in index:
                    raise TruncationExceeded(f"basis is not closed: {new} missing")
                out[index[new], j] += c
    return out


def beam_splitter_hamiltonian(theta: float, phi: float) -> np.ndarray:
    """Single-particle matrix h with H_BS = sum_jk h[j, k] a_j^dag a_k."""
    return np.array([[0, theta * np.exp(1j * phi)], [theta * np.exp(-1j * phi), 0]])


def heisenberg_mode_matrix(h: np.ndarray) -> np.ndarray:
    """Row-convention matrix of exp(iH) a_j^dag exp(-iH) for quadratic H.

    For H = sum h_jk a_j^dag a_k the conjugated creation operator is
    sum_k (exp(ih))[k, j] a_k^dag, so the row-convention matrix is the
    transpose of exp(ih).
    """
    from scipy.linalg import expm

    return expm(1j * np.asarray(h)).T


def haar_unitary(n: int, rng: np.random.Generator) -> ModeUnitary:
    return ModeUnitary(unitary_group.rvs(n, random_state=rng) if n > 1 else np.exp(2j * np.pi * rng.random()) * np.eye(1))


# ---------------------------------------------------------------------------
# decomposition

def reck_decompose(u: ModeUnitary | np.ndarray, zero_tol: float = 1e-15) -> list[ElementSpec]:
    """Adjacent-mode beam splitters and final phases whose ordered product is ``u``.

    Entries below the diagonal are nulled column by column from the bottom
    with inverse splitters acting on rows (q-1, q).  What remains is a
    diagonal of phases.
    """
    if not isinstance(u, ModeUnitary):
        u = ModeUnitary(u)
    n = u.dims
    w = np.array(u.matrix)
    specs: list[ElementSpec] = []
    for col in range(n - 1):
        for q in range(n - 1, col, -1):
            p = q - 1
            up, uq = w[p, col], w[q, col]
            if abs(uq) < zero_tol:
                continue
            theta = math.atan2(abs(uq), abs(up))
            phi = np.angle(uq) - (np.angle(up) if abs(up) >= zero_tol else 0.0) - math.pi / 2
            spec = beam_splitter(p, q, theta, float(phi))
            t = element_matrix(spec).matrix
            w[[p, q], :] = t.conj().T @ w[[p, q], :]
            specs.append(spec)
    for j in range(n):
        angle = float(np.angle(w[j, j]))
        if abs(angle) > zero_tol:
            specs.append(phase(j, angle))
    return specs


# ---------------------------------------------------------------------------
# encodings

def dual_rail_to_polarization(state: PureState) -> PureState:
    """Convert a two-rail photon into one polarized spatial mode.

    Rail ``a`` becomes horizontal and rail ``b`` vertical: the photon in ``b``
    has its polarization rotated to V and is then merged into ``a`` by a PBS.
    The emptied ``b`` port is discarded after checking it is vacuum.
    """
    layout = state.layout
    if layout.mode_count != 2 or any(p is not None for _, p in layout.labels):
        raise InvalidEncoding("expected two unpolarized rails")
    if state.is_zero or state.photon_numbers() != {1}:
        raise InvalidEncoding("dual-rail qubit must hold exactly one photon")
    a, b = layout.spatial_names
    pol = ModeLayout.of([a, b], polarized=True)
    trunc = state.truncation
    embedded = PureState(pol, {(na, 0, nb, 0): amp for (na, nb), amp in state.terms.items()}, trunc)
    aH, aV, bH, bV = (pol.index(a, H), pol.index(a, V), pol.index(b, H), pol.index(b, V))
    circuit = [polarization_rotation(bH, bV, math.pi / 2, math.pi / 2), pbs(aH, aV, bH, bV)]
    merged = apply_circuit(embedded, circuit)
    out = project(project(merged, bV, 0), bH, 0)
    if abs(out.norm2 - state.norm2) > 1e-12:
        raise InvalidEncoding("conversion circuit leaked amplitude into the discarded port")
    return out

