"""Two-photon interference and polarization fusion gates.

Fusion gates are simulated by the generic pipeline: build the photonic
state, apply the optical circuit with :mod:`linear_optics`, and post-select
on every detector signature.  Outcome tables are enumerated exactly.

Throughout, the 45 degree rotation is ``H -> (H+V)/sqrt2, V -> (H-V)/sqrt2``
(see :func:`linear_optics.rotate_45`) and the 50:50 splitter is
``a -> (c+d)/sqrt2, b -> (c-d)/sqrt2``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qubits
from .fock_core import (H, V, ModeLayout, PureState, TruncationConfig, create, inner_product,
                        monomial, photon_distribution, post_select_many)
from .linear_optics import (ModeUnitary, apply_circuit, apply_interferometer, fifty_fifty, pbs,
                            rotate_45)

TYPE_I, TYPE_II = "type_I", "type_II"


@dataclass(frozen=True, eq=False)
class FusionOutcome:
    """One detector signature of a fusion gate.

    ``signature`` lists photon counts on the detected modes: (d_H, d_V) for
    type I and (c_H, c_V, d_H, d_V) for type II.  ``operator_state`` is the
    unnormalized remainder written as creation operators on the vacuum, that
    is the projected state divided by sqrt(prod n!) of the detected counts.
    It is the object the fusion tables describe.
    """

    gate: str
    signature: tuple[int, ...]
    conditional_state: PureState
    probability: float
    operator_state: PureState

    @property
    def label(self) -> str:
        return signature_label(self.gate, self.signature)

    def to_json(self) -> dict:
        return {"signature": list(self.signature), "label": self.label,
                "probability": self.probability, "state": self.conditional_state.to_json()}


def signature_label(gate: str, signature: Sequence[int]) -> str:
    if gate == TYPE_I:
        return f"({signature[0]},{signature[1]})"

    def port(nh, nv):
        if nh + nv == 0:
            return "0"
        if nh + nv == 1:
            return H if nh else V
        if nh == 2:
            return "2H"
        if nv == 2:
            return "2V"
        return "HV"

    return f"({port(*signature[:2])},{port(*signature[2:])})"


def _polarized_modes(layout: ModeLayout, spatial: str) -> tuple[int, int]:
    return layout.index(spatial, H), layout.index(spatial, V)


def _enumerate(state: PureState, gate: str, detected: Sequence[int]) -> list[FusionOutcome]:
    outcomes = []
    total = state.norm2
    for sig, p in photon_distribution(state, detected).items():
        if p <= 0:
            continue
        cond, prob = post_select_many(state, detected, sig)
        scale = math.sqrt(prob * total / math.prod(math.factorial(n) for n in sig))
        outcomes.append(FusionOutcome(gate, sig, cond, prob, cond.scaled(scale)))
    return outcomes


def type_I_circuit(layout: ModeLayout, mode_a: str, mode_b: str):
    aH, aV = _polarized_modes(layout, mode_a)
    bH, bV = _polarized_modes(layout, mode_b)
    return [pbs(aH, aV, bH, bV), *rotate_45(bH, bV)]


def type_II_circuit(layout: ModeLayout, mode_a: str, mode_b: str):
    aH, aV = _polarized_modes(layout, mode_a)
    bH, bV = _polarized_modes(layout, mode_b)
    rot = [*rotate_45(aH, aV), *rotate_45(bH, bV)]
    return [*rot, pbs(aH, aV, bH, bV), *rot]


def type_I_fusion(state: PureState, mode_a: str, mode_b: str) -> list[FusionOutcome]:
    """PBS on ``a, b``, 45 degree rotation on output ``b``, detect ``b`` in H/V.

    The undetected output keeps the label of ``mode_a``; it is the mode the
    fusion tables call ``c``.
    """
    out = apply_circuit(state, type_I_circuit(state.layout, mode_a, mode_b))
    return _enumerate(out, TYPE_I, _polarized_modes(state.layout, mode_b))


def type_II_fusion(state: PureState, mode_a: str, mode_b: str) -> list[FusionOutcome]:
    """Diagonal-cut PBS (rotation, H/V PBS, rotation) with both outputs detected."""
    out = apply_circuit(state, type_II_circuit(state.layout, mode_a, mode_b))
    detected = (*_polarized_modes(state.layout, mode_a), *_polarized_modes(state.layout, mode_b))
    return _enumerate(out, TYPE_II, detected)


def success_probability(outcomes: Sequence[FusionOutcome]) -> float:
    """Total weight of the heralding signatures.

    Type I succeeds on one detected photon, type II on one photon per port.
    """
    def ok(o):
        if o.gate == TYPE_I:
            return sum(o.signature) == 1
        return o.signature[0] + o.signature[1] == 1 and o.signature[2] + o.signature[3] == 1

    return sum(o.probability for o in outcomes if ok(o))


# ---------------------------------------------------------------------------
# two-photon interference

def hom_experiment() -> PureState:
    layout = ModeLayout.of("ab")
    return apply_circuit(PureState.basis(layout, (1, 1)), fifty_fifty(0, 1))


def hom_coincidence(distinguishable: bool = False) -> float:
    """Probability of one photon in each output port.

    Distinguishable photons carry orthogonal polarization labels; the
    splitter acts identically on both labels.
    """
    if not distinguishable:
        out = hom_experiment()
        return abs(out.amplitude((1, 1))) ** 2
    layout = ModeLayout.of("ab", polarized=True)
    aH, aV, bH, bV = (layout.index(s, p) for s in "ab" for p in (H, V))
    psi = PureState.basis(layout, (1, 0, 0, 1))
    out = apply_circuit(psi, [*fifty_fifty(aH, bH), *fifty_fifty(aV, bV)])
    return sum(abs(a) ** 2 for occ, a in out.terms.items()
               if occ[aH] + occ[aV] == 1 and occ[bH] + occ[bV] == 1)


def hom_reverse_projector() -> PureState:
    """Input state selected by a coincidence count behind the 50:50 splitter."""
    from .linear_optics import circuit_unitary

    u = circuit_unitary(fifty_fifty(0, 1), 2)
    return apply_interferometer(PureState.basis(ModeLayout.of("ab"), (1, 1)),
                                ModeUnitary(u.matrix.conj().T))


# ---------------------------------------------------------------------------
# inputs built from ancilla-entangled photons

ANCILLA_LAYOUT = ModeLayout.of(["p", "a", "b", "q"], polarized=True)


def ancilla_input(g: Sequence[complex]) -> PureState:
    """(f1 a_H + f2 a_V)(f3 b_H + f4 b_V)|vac> with f1 = g1 p_H, f2 = g2 p_V, f3 = g3 q_H, f4 = g4 q_V.

    The ancilla photons in ``p`` and ``q`` make the f_k genuine operators, so
    every term of a fusion table lands in a distinct occupation pattern.
    """
    lay = ANCILLA_LAYOUT
    m = {f"{s}{p}": lay.index(s, p) for s in "pabq" for p in (H, V)}
    g1, g2, g3, g4 = g
    left = monomial(lay, [m["pH"], m["aH"]], g1) + monomial(lay, [m["pV"], m["aV"]], g2)
    state = PureState.zero(lay)
    for occ, amp in left.terms.items():
        base = PureState.basis(lay, occ, amp)
        state = state + create(create(base, m["qH"]), m["bH"]).scaled(g3)
        state = state + create(create(base, m["qV"]), m["bV"]).scaled(g4)
    return state


def bell_pair_input() -> PureState:
    """Bell pairs (|H,H> + |V,V>)/sqrt2 on (p, a) and on (b, q)."""
    s = 1 / math.sqrt(2)
    return ancilla_input([s, s, s, s])


def _f_term(layout: ModeLayout, coef: complex, fs: Sequence[int], outputs: Sequence[tuple[str, str]],
            g: Sequence[complex]) -> PureState:
    anc = {1: ("p", H), 2: ("p", V), 3: ("q", H), 4: ("q", V)}
    modes = [layout.index(*anc[k]) for k in fs] + [layout.index(*o) for o in outputs]
    return monomial(layout, modes, coef * math.prod(g[k - 1] for k in fs),
                    TruncationConfig(2, 6))


# Rows as lists of (coefficient, f indices, created output modes).  Output
# mode "a" is the undetected port c of type I; type II leaves no port.
DERIVED_TYPE_I = {
    (0, 0): [(1.0, (1, 4), [("a", H), ("a", V)])],
    (2, 0): [(0.5, (2, 3), [])],
    (0, 2): [(-0.5, (2, 3), [])],
    (1, 0): [(1 / math.sqrt(2), (1, 3), [("a", H)]), (1 / math.sqrt(2), (2, 4), [("a", V)])],
    (0, 1): [(1 / math.sqrt(2), (1, 3), [("a", H)]), (-1 / math.sqrt(2), (2, 4), [("a", V)])],
}
PUBLISHED_TYPE_I = {
    (0, 0): [(1.0, (1, 2), [("a", H), ("a", V)])],
    (2, 0): [(0.5, (2, 3), [])],
    (0, 2): [(0.5, (2, 3), [])],
    (1, 0): DERIVED_TYPE_I[(1, 0)],
    (0, 1): DERIVED_TYPE_I[(0, 1)],
}


def _expand(pairs):
    """Expand a product of sums of f's into (coef, f indices) terms."""
    terms = [(1.0, ())]
    for factor in pairs:
        terms = [(c * fc, fs + (k,)) for c, fs in terms for fc, k in factor]
    return terms


_SUM12 = [(1.0, 1), (1.0, 2)]
_DIF12 = [(1.0, 1), (-1.0, 2)]
_SUM34 = [(1.0, 3), (1.0, 4)]
_DIF34 = [(1.0, 3), (-1.0, 4)]


def _rows_type_ii(scale_2h: float, scale_2v: float, scale_pair: float):
    even = [(scale_pair, (1, 3), []), (scale_pair, (2, 4), [])]
    odd = [(scale_pair, (1, 4), []), (scale_pair, (2, 3), [])]
    left = [(c, fs, []) for c, fs in _expand([_SUM12, _DIF34])]
    right = [(c, fs, []) for c, fs in _expand([_DIF12, _SUM34])]

    def scaled(rows, s):
        return [(c * s, fs, o) for c, fs, o in rows]

    return {
        (2, 0, 0, 0): scaled(left, scale_2h), (0, 2, 0, 0): scaled(left, scale_2v),
        (0, 0, 2, 0): scaled(right, scale_2h), (0, 0, 0, 2): scaled(right, scale_2v),
        (1, 0, 1, 0): even, (0, 1, 0, 1): even,
        (1, 0, 0, 1): odd, (0, 1, 1, 0): odd,
    }


DERIVED_TYPE_II = _rows_type_ii(0.25, -0.25, 0.5)
PUBLISHED_TYPE_II = _rows_type_ii(1.0, 1.0, 1.0)


def table_row_state(layout: ModeLayout, row, g: Sequence[complex]) -> PureState:
    total = PureState.zero(layout, TruncationConfig(2, 6))
    for coef, fs, outs in row:
        total = total + _f_term(layout, coef, fs, outs, g)
    return total


@dataclass(frozen=True)
class TableRowCheck:
    gate: str
    signature: tuple[int, ...]
    label: str
    pipeline_error: float
    published_consistent: bool
    published_ratio: complex | None

    def to_json(self) -> dict:
        ratio = self.published_ratio
        return {"gate": self.gate, "signature": list(self.signature), "label": self.label,
                "pipeline_error": self.pipeline_error,
                "published_consistent": self.published_consistent,
                "published_ratio": None if ratio is None else [ratio.real, ratio.imag]}


def _proportionality(a: PureState, b: PureState, tol: float = 1e-10) -> complex | None:
    """lambda with a = lambda * b, or None if not proportional."""
    if b.is_zero:
        return None
    lam = inner_product(b, a) / b.norm2
    return lam if a.max_abs_diff(b.scaled(lam)) < tol else None


def check_fusion_table(gate: str, g: Sequence[complex]) -> list[TableRowCheck]:
    """Compare every signature of the Fock pipeline with the derived table.

    ``published_consistent`` records whether the printed table row equals the
    derived one up to a positive overall factor; rows that differ by sign or
    by which f's appear are reported as inconsistent rather than hidden.
    """
    state = ancilla_input(g)
    if gate == TYPE_I:
        outcomes, derived, published = type_I_fusion(state, "a", "b"), DERIVED_TYPE_I, PUBLISHED_TYPE_I
    else:
        outcomes, derived, published = type_II_fusion(state, "a", "b"), DERIVED_TYPE_II, PUBLISHED_TYPE_II
    by_sig = {o.signature: o for o in outcomes}
    checks = []
    for sig, row in derived.items():
        o = by_sig.get(sig)
        if o is None:
            layout = _remaining_layout(gate)
            got = PureState.zero(layout, TruncationConfig(2, 6))
        else:
            got = o.operator_state.with_truncation(TruncationConfig(2, 6))
        want = table_row_state(got.layout, row, g)
        err = got.max_abs_diff(want)
        ratio = _proportionality(want, table_row_state(got.layout, published[sig], g))
        ok = ratio is not None and abs(ratio.imag) < 1e-10 and ratio.real > 0
        checks.append(TableRowCheck(gate, sig, signature_label(gate, sig), err, ok, ratio))
    extra = set(by_sig) - set(derived)
    if any(by_sig[s].probability > 1e-12 for s in extra):
        raise AssertionError(f"pipeline produced signatures outside the table: {sorted(extra)}")
    return checks


def _remaining_layout(gate: str) -> ModeLayout:
    lay = ANCILLA_LAYOUT
    drop = [lay.index("b", H), lay.index("b", V)]
    if gate == TYPE_II:
        drop += [lay.index("a", H), lay.index("a", V)]
    return lay.without(drop)


def ghz_target() -> PureState:
    """(|HHH> + |VVV>)/sqrt2 on modes p, a, q."""
    lay = _remaining_layout(TYPE_I)
    hs = [lay.index(s, H) for s in "paq"]
    vs = [lay.index(s, V) for s in "paq"]
    return (monomial(lay, hs) + monomial(lay, vs)).scaled(1 / math.sqrt(2))


def parity_projection_demo(c: Sequence[complex]) -> dict[str, np.ndarray]:
    """Type-II fusion on a two-qubit state whose values are copied to ancillas.

    Input ``sum c_xy |x>_p |y>_q |x>_a |y>_b`` for x, y in {H, V}, amplitudes
    ordered (HH, HV, VH, VV).  Returns the normalized two-qubit state left on
    (p, q) for each single-photon-per-port signature label.
    """
    lay = ANCILLA_LAYOUT
    state = PureState.zero(lay)
    for (x, y), amp in zip(itertools.product((H, V), repeat=2), c):
        modes = [lay.index("p", x), lay.index("a", x), lay.index("b", y), lay.index("q", y)]
        state = state + monomial(lay, modes, amp)
    state = state.normalized()
    results = {}
    for o in type_II_fusion(state, "a", "b"):
        if o.signature[0] + o.signature[1] != 1:
            continue
        rest = o.conditional_state
        vec = np.array([rest.amplitude(_pq_occ(rest.layout, x, y))
                        for x, y in itertools.product((H, V), repeat=2)])
        results[o.label] = vec / np.linalg.norm(vec)
    return results


def _pq_occ(layout: ModeLayout, x: str, y: str) -> tuple[int, ...]:
    occ = [0] * layout.mode_count
    occ[layout.index("p", x)] = 1
    occ[layout.index("q", y)] = 1
    return tuple(occ)


# ---------------------------------------------------------------------------
# entanglement and Clifford checks

def dual_rail_entropy(state: PureState, rails=((0, 1), (2, 3))) -> float:
    """Entanglement entropy of the two-qubit dual-rail component, renormalized.

    Terms outside the subspace with exactly one photon on each rail pair are
    discarded before renormalizing.  Returns 0 when nothing survives.
    """
    (r0, r1), (r2, r3) = rails
    coeff = np.zeros((2, 2), dtype=complex)
    for occ, amp in state.terms.items():
        if sum(occ) != 2 or occ[r0] + occ[r1] != 1 or occ[r2] + occ[r3] != 1:
            continue
        coeff[occ[r1], occ[r3]] += amp
    norm = np.linalg.norm(coeff)
    if norm == 0:
        return 0.0
    psi = (coeff / norm).reshape(4)
    return qubits.von_neumann_entropy(qubits.reduced_first_qubit(psi))


def polarization_pair_entropy(state: PureState) -> float:
    """Entropy of two polarized single photons, with modes (aH, aV, bH, bV)."""
    return dual_rail_entropy(state, ((0, 1), (2, 3)))


def separability_witness(u: ModeUnitary | np.ndarray, photons: tuple[int, int] = (0, 2)) -> float:
    """Dual-rail entanglement produced by ``u`` acting on two single photons.

    No measurement is performed; the output is restricted to the two-qubit
    dual-rail subspace (rails (0, 1) and (2, 3)) and renormalized.
    """
    if not isinstance(u, ModeUnitary):
        u = ModeUnitary(u)
    j, k = photons
    if j == k:
        raise ValueError("photons must start in distinct modes")
    occ = [0] * u.dims
    occ[j] = occ[k] = 1
    lay = ModeLayout.of([f"m{i}" for i in range(u.dims)])
    out = apply_interferometer(PureState.basis(lay, occ), u)
    return dual_rail_entropy(out)


def creation_polynomial(u: ModeUnitary | np.ndarray, photons: tuple[int, int]) -> np.ndarray:
    """Symmetric coefficient matrix C with output = sum_kl C[k, l] a_k^dag a_l^dag |vac>.

    Obtained from :func:`apply_interferometer` amplitudes, independent of the
    factorized form it is compared with.
    """
    mat = u.matrix if isinstance(u, ModeUnitary) else np.asarray(u)
    n = mat.shape[0]
    lay = ModeLayout.of([f"m{i}" for i in range(n)])
    occ = [0] * n
    occ[photons[0]] = occ[photons[1]] = 1
    out = apply_interferometer(PureState.basis(lay, occ), mat)
    c = np.zeros((n, n), dtype=complex)
    for o, amp in out.terms.items():
        idx = [m for m, cnt in enumerate(o) for _ in range(cnt)]
        if idx[0] == idx[1]:
            c[idx[0], idx[0]] = amp / math.sqrt(2)
        else:
            c[idx[0], idx[1]] = c[idx[1], idx[0]] = amp / 2
    return c


def clifford_conjugation_check(gate: str, p1: str, p2: str) -> tuple[str, str, complex]:
    """U^dag (P1 x P2) U written as phase * (P3 x P4)."""
    u = {"CZ": qubits.CZ, "CNOT": qubits.CNOT}[gate]
    target = u.conj().T @ np.kron(qubits.PAULIS[p1], qubits.PAULIS[p2]) @ u
    for a, b in itertools.product("IXYZ", repeat=2):
        cand = np.kron(qubits.PAULIS[a], qubits.PAULIS[b])
        for ph in (1, -1, 1j, -1j):
            if np.allclose(target, ph * cand, atol=1e-12):
                return a, b, ph
    raise ValueError(f"{gate} does not map {p1}{p2} to a Pauli")
