"""Sparse multi-mode bosonic Fock states.

States are immutable maps from occupation tuples to complex amplitudes.
Every operation returns a new state; nothing mutates in place.

Modes are addressed by flat integer index.  A :class:`ModeLayout` attaches
a (spatial, polarization) label to each flat index so that circuits can be
written against names such as ``layout.index("a", "H")``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import LayoutMismatch, TruncationExceeded, ZeroProbabilityBranch

Occupation = tuple[int, ...]

H, V = "H", "V"


@dataclass(frozen=True)
class TruncationConfig:
    max_photons_per_mode: int = 2
    max_total_photons: int = 4
    prune_epsilon: float = 1e-14

    def __post_init__(self):
        if self.max_photons_per_mode < 1 or self.max_total_photons < 1:
            raise ValueError("truncation limits must be positive")
        if not 0 < self.prune_epsilon < 1e-9:
            raise ValueError("prune_epsilon must lie in (0, 1e-9)")

    def allows(self, occ: Occupation) -> bool:
        return max(occ, default=0) <= self.max_photons_per_mode and sum(occ) <= self.max_total_photons


DEFAULT_TRUNCATION = TruncationConfig()


@dataclass(frozen=True)
class ModeLayout:
    """Ordered labels for the flat modes of a register.

    Each label is a ``(spatial, polarization)`` pair; polarization is ``None``
    for unpolarized (dual-rail) modes.
    """

    labels: tuple[tuple[str, str | None], ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate mode labels in {self.labels}")

    @classmethod
    def of(cls, names: Iterable[str], polarized: bool = False) -> "ModeLayout":
        if polarized:
            return cls(tuple((n, p) for n in names for p in (H, V)))
        return cls(tuple((n, None) for n in names))

    @property
    def mode_count(self) -> int:
        return len(self.labels)

    @property
    def spatial_names(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(s for s, _ in self.labels))

    @property
    def spatial_count(self) -> int:
        return len(self.spatial_names)

    @property
    def polarized(self) -> bool:
        return bool(self.labels) and all(p is not None for _, p in self.labels)

    def index(self, spatial: str, pol: str | None = None) -> int:
        try:
            return self.labels.index((spatial, pol))
        except ValueError:
            raise KeyError(f"no mode {spatial}_{pol} in layout") from None

    def name(self, mode: int) -> str:
        s, p = self.labels[mode]
        return s if p is None else f"{s}_{p}"

    def without(self, modes: Iterable[int]) -> "ModeLayout":
        drop = set(modes)
        return ModeLayout(tuple(lab for i, lab in enumerate(self.labels) if i not in drop))

    def concat(self, other: "ModeLayout") -> "ModeLayout":
        return ModeLayout(self.labels + other.labels)

    def to_json(self) -> dict:
        return {"modes": [[s, p] for s, p in self.labels]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ModeLayout":
        return cls(tuple((s, p) for s, p in data["modes"]))


def _prune(terms: Mapping[Occupation, complex], eps: float) -> dict[Occupation, complex]:
    return {k: complex(v) for k, v in terms.items() if abs(v) > eps}


@dataclass(frozen=True, eq=False)
class PureState:
    """Sparse superposition of occupation basis states.

    Sub-normalized states are allowed; ``norm2`` is tracked, never folded in.
    """

    layout: ModeLayout
    terms: Mapping[Occupation, complex]
    truncation: TruncationConfig = DEFAULT_TRUNCATION
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.layout.mode_count
        pruned = _prune(self.terms, self.truncation.prune_epsilon)
        for occ in pruned:
            if len(occ) != n:
                raise LayoutMismatch(f"occupation {occ} does not match {n} modes")
            if not self.truncation.allows(occ):
                raise TruncationExceeded(f"occupation {occ} violates {self.truncation}")
        object.__setattr__(self, "terms", pruned)

    # construction helpers -------------------------------------------------
    @classmethod
    def vacuum(cls, layout: ModeLayout, truncation: TruncationConfig = DEFAULT_TRUNCATION) -> "PureState":
        return cls(layout, {(0,) * layout.mode_count: 1.0}, truncation)

    @classmethod
    def basis(cls, layout: ModeLayout, occ: Sequence[int], amplitude: complex = 1.0,
              truncation: TruncationConfig = DEFAULT_TRUNCATION) -> "PureState":
        return cls(layout, {tuple(int(x) for x in occ): amplitude}, truncation)

    @classmethod
    def zero(cls, layout: ModeLayout, truncation: TruncationConfig = DEFAULT_TRUNCATION) -> "PureState":
        return cls(layout, {}, truncation)

    # algebra ---------------------------------------------------------------
    @property
    def norm2(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.terms.values()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def amplitude(self, occ: Sequence[int]) -> complex:
        return self.terms.get(tuple(occ), 0j)

    def photon_numbers(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def normalized(self) -> "PureState":
        n2 = self.norm2
        if n2 == 0:
            raise ZeroProbabilityBranch("cannot normalize the zero vector")
        s = 1 / math.sqrt(n2)
        return self._with({k: v * s for k, v in self.terms.items()})

    def scaled(self, c: complex) -> "PureState":
        return self._with({k: v * c for k, v in self.terms.items()})

    def __add__(self, other: "PureState") -> "PureState":
        _check_layout(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0j) + v
        return self._with(out)

    def __sub__(self, other: "PureState") -> "PureState":
        return self + other.scaled(-1)

    def __mul__(self, c: complex) -> "PureState":
        return self.scaled(c)

    __rmul__ = __mul__

    def _with(self, terms: Mapping[Occupation, complex], layout: ModeLayout | None = None) -> "PureState":
        return PureState(layout or self.layout, terms, self.truncation)

    def with_truncation(self, truncation: TruncationConfig) -> "PureState":
        return PureState(self.layout, self.terms, truncation)

    def max_abs_diff(self, other: "PureState") -> float:
        _check_layout(self, other)
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.amplitude(k) - other.amplitude(k)) for k in keys), default=0.0)

    def to_vector(self, basis: Sequence[Occupation]) -> np.ndarray:
        return np.array([self.amplitude(b) for b in basis], dtype=complex)

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "layout": self.layout.to_json(),
            "terms": [{"occ": list(k), "re": v.real, "im": v.imag} for k, v in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, truncation: TruncationConfig | None = None) -> "PureState":
        layout = ModeLayout.from_json(data["layout"])
        terms = {tuple(t["occ"]): complex(t["re"], t["im"]) for t in data["terms"]}
        if truncation is None:
            top = max((max(k, default=0) for k in terms), default=1)
            tot = max((sum(k) for k in terms), default=1)
            truncation = TruncationConfig(max(top, DEFAULT_TRUNCATION.max_photons_per_mode),
                                          max(tot, DEFAULT_TRUNCATION.max_total_photons))
        return cls(layout, terms, truncation)


def _check_layout(a: PureState, b: PureState):
    if a.layout != b.layout:
        raise LayoutMismatch(f"{a.layout} != {b.layout}")


def _check_mode(state: PureState, mode: int):
    if not 0 <= mode < state.layout.mode_count:
        raise IndexError(f"mode {mode} outside 0..{state.layout.mode_count - 1}")


def create(state: PureState, mode: int) -> PureState:
    """Apply the creation operator of ``mode``: |n> -> sqrt(n+1)|n+1>."""
    _check_mode(state, mode)
    out: dict[Occupation, complex] = {}
    for occ, amp in state.terms.items():
        new = occ[:mode] + (occ[mode] + 1,) + occ[mode + 1:]
        if not state.truncation.allows(new):
            raise TruncationExceeded(f"a^dag on mode {mode} of {occ} exceeds {state.truncation}")
        out[new] = out.get(new, 0j) + amp * math.sqrt(occ[mode] + 1)
    return state._with(out)


def annihilate(state: PureState, mode: int) -> PureState:
    """Apply the annihilation operator of ``mode``.  May return the zero vector."""
    _check_mode(state, mode)
    out: dict[Occupation, complex] = {}
    for occ, amp in state.terms.items():
        n = occ[mode]
        if n == 0:
            continue
        new = occ[:mode] + (n - 1,) + occ[mode + 1:]
        out[new] = out.get(new, 0j) + amp * math.sqrt(n)
    return state._with(out)


def number_expectation(state: PureState, mode: int) -> float:
    _check_mode(state, mode)
    return float(sum(abs(a) ** 2 * occ[mode] for occ, a in state.terms.items()))


def inner_product(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    _check_layout(a, b)
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    total = 0j
    for k in small:
        if k in large:
            total += a.terms[k].conjugate() * b.terms[k]
    return total


def monomial(layout: ModeLayout, modes: Sequence[int], coef: complex = 1.0,
             truncation: TruncationConfig = DEFAULT_TRUNCATION) -> PureState:
    """``coef * prod(a_m^dag for m in modes) |vac>``, with repeated modes allowed."""
    psi = PureState.vacuum(layout, truncation)
    for m in modes:
        psi = create(psi, m)
    return psi.scaled(coef)


def tensor(a: PureState, b: PureState, truncation: TruncationConfig | None = None) -> PureState:
    """Product state on the concatenated layout ``a.layout + b.layout``."""
    trunc = truncation or a.truncation
    terms = {ka + kb: va * vb for ka, va in a.terms.items() for kb, vb in b.terms.items()}
    return PureState(a.layout.concat(b.layout), terms, trunc)


def project(state: PureState, mode: int, n: int) -> PureState:
    """Unnormalized component with ``n`` photons in ``mode``; that mode is removed."""
    _check_mode(state, mode)
    kept = {occ[:mode] + occ[mode + 1:]: amp for occ, amp in state.terms.items() if occ[mode] == n}
    return state._with(kept, state.layout.without([mode]))


def post_select(state: PureState, mode: int, n: int) -> tuple[PureState, float]:
    """Condition on detecting ``n`` photons in ``mode``.

    Returns the renormalized state on the remaining modes and the branch
    probability relative to the input norm.
    """
    total = state.norm2
    kept = project(state, mode, n)
    if kept.is_zero or total == 0:
        raise ZeroProbabilityBranch(f"no support for {n} photons in mode {state.layout.name(mode)}")
    return kept.normalized(), kept.norm2 / total


def photon_distribution(state: PureState, modes: Sequence[int]) -> dict[Occupation, float]:
    """Exact joint photon-number distribution of ``modes``."""
    total = state.norm2
    dist: dict[Occupation, float] = {}
    for occ, amp in state.terms.items():
        key = tuple(occ[m] for m in modes)
        dist[key] = dist.get(key, 0.0) + abs(amp) ** 2 / total
    return dict(sorted(dist.items()))


def post_select_many(state: PureState, modes: Sequence[int], counts: Sequence[int]) -> tuple[PureState, float]:
    """Sequential :func:`post_select` over several modes (indices refer to ``state``)."""
    order = sorted(range(len(modes)), key=lambda i: modes[i], reverse=True)
    prob = 1.0
    for i in order:
        state, p = post_select(state, modes[i], counts[i])
        prob *= p
    return state, prob


def sample_photon_numbers(state: PureState, modes: Sequence[int],
                          rng: np.random.Generator) -> tuple[Occupation, PureState, float]:
    if len(set(modes)) != len(modes):
        raise ValueError("modes must be distinct")
    dist = photon_distribution(state, modes)
    outcomes = list(dist)
    probs = np.array([dist[o] for o in outcomes])
    pick = outcomes[int(rng.choice(len(outcomes), p=probs / probs.sum()))]
    conditional, prob = post_select_many(state, modes, pick)
    return pick, conditional, prob


def fock_basis(n_modes: int, max_total: int, max_per_mode: int | None = None,
               total: int | None = None) -> list[Occupation]:
    """All occupations with at most ``max_total`` photons (or exactly ``total``)."""
    cap = max_total if max_per_mode is None else max_per_mode
    out = [
        occ for occ in itertools.product(range(cap + 1), repeat=n_modes)
        if (sum(occ) == total if total is not None else sum(occ) <= max_total)
    ]
    return sorted(out, key=lambda o: (sum(o), tuple(-x for x in o)))


# ---------------------------------------------------------------------------
# density operators

@dataclass(frozen=True, eq=False)
class DensityOperator:
    basis: tuple[Occupation, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (len(self.basis), len(self.basis)):
            raise ValueError(f"matrix shape {m.shape} does not match basis of {len(self.basis)}")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis occupations must be distinct")
        m.setflags(write=False)
        object.__setattr__(self, "basis", tuple(tuple(b) for b in self.basis))
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pure(cls, state: PureState, basis: Sequence[Occupation] | None = None) -> "DensityOperator":
        basis = tuple(basis) if basis is not None else tuple(sorted(state.terms))
        v = state.to_vector(basis)
        return cls(basis, np.outer(v, v.conj()))

    @classmethod
    def from_vector(cls, basis: Sequence[Occupation], vec: np.ndarray) -> "DensityOperator":
        v = np.asarray(vec, dtype=complex)
        return cls(tuple(basis), np.outer(v, v.conj()))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def normalized(self) -> "DensityOperator":
        t = self.trace
        if t <= 0:
            raise ZeroProbabilityBranch("density operator has zero trace")
        return DensityOperator(self.basis, self.matrix / t)

    def check(self, herm_tol: float = 1e-12, pos_tol: float = 1e-10) -> None:
        m = self.matrix
        if np.max(np.abs(m - m.conj().T), initial=0.0) > herm_tol:
            raise ValueError("density operator is not Hermitian")
        if not 0 < self.trace <= 1 + 1e-12:
            raise ValueError(f"trace {self.trace} outside (0, 1]")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -pos_tol:
            raise ValueError("density operator is not positive")

    def transform(self, op: np.ndarray, new_basis: Sequence[Occupation]) -> "DensityOperator":
        """rho -> op rho op^dag, with ``op`` mapping this basis into ``new_basis``."""
        return DensityOperator(tuple(new_basis), op @ self.matrix @ op.conj().T)

    def expectation(self, op: np.ndarray) -> complex:
        return complex(np.trace(op @ self.matrix))

    def fidelity_with(self, vec: np.ndarray) -> float:
        """<v|rho|v> for a normalized vector expressed in this basis."""
        v = np.asarray(vec, dtype=complex)
        return float((v.conj() @ self.matrix @ v).real)

    def population(self, occ: Sequence[int]) -> float:
        return float(self.matrix[self.basis.index(tuple(occ)), self.basis.index(tuple(occ))].real)


def weighted_partial_trace(rho: DensityOperator, modes: Sequence[int],
                           weight) -> DensityOperator:
    """Trace out ``modes`` after weighting each detected occupation by ``weight(occ)``.

    Implements ``Tr_modes[(E (x) I) rho]`` for any POVM element ``E`` diagonal in
    the Fock basis of the traced modes.  The result is unnormalized.
    """
    drop = set(modes)
    keep = [i for i in range(len(rho.basis[0]))] if rho.basis else []
    keep = [i for i in keep if i not in drop]
    rest_index: dict[Occupation, int] = {}
    groups: dict[Occupation, list[tuple[int, int]]] = {}
    for i, occ in enumerate(rho.basis):
        rest = tuple(occ[k] for k in keep)
        det = tuple(occ[m] for m in modes)
        r = rest_index.setdefault(rest, len(rest_index))
        groups.setdefault(det, []).append((i, r))
    out = np.zeros((len(rest_index), len(rest_index)), dtype=complex)
    for det, pairs in groups.items():
        w = weight(det)
        if w == 0:
            continue
        idx = [p[0] for p in pairs]
        ridx = [p[1] for p in pairs]
        out[np.ix_(ridx, ridx)] += w * rho.matrix[np.ix_(idx, idx)]
    return DensityOperator(tuple(rest_index), out)


CLICK, NO_CLICK = "click", "no-click"


def threshold_detect(rho: DensityOperator, modes: Sequence[int], eta: float,
                     dark_count: float = 0.0) -> list[tuple[str, DensityOperator | None, float]]:
    """Non-number-resolving detector with efficiency ``eta`` watching ``modes``.

    Each photon is independently lost with probability ``1 - eta``; the
    detector clicks if any photon survives.  ``dark_count`` is the probability
    of a click with no surviving photon (default 0, the only value exercised).
    Detected modes are traced out of the conditional states.
    """
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    total = rho.trace

    def no_click(det):
        return (1 - dark_count) * (1 - eta) ** sum(det)

    off = weighted_partial_trace(rho, modes, no_click)
    on = weighted_partial_trace(rho, modes, lambda det: 1 - no_click(det))
    out = []
    for label, part in ((NO_CLICK, off), (CLICK, on)):
        p = part.trace / total
        out.append((label, part.normalized() if p > 0 else None, max(p, 0.0)))
    return out


def bucket_detect(rho: DensityOperator, mode: int, eta: float) -> list[tuple[str, DensityOperator | None, float]]:
    """Single-mode bucket detector; see :func:`threshold_detect`."""
    if not 0 <= mode < len(rho.basis[0]):
        raise IndexError(f"mode {mode} not in density operator basis")
    return threshold_detect(rho, [mode], eta)
