"""Polynomial-time amplitudes for the classically simulable circuit family.

Circuits built from phase shifters, nearest-neighbour beam splitters and
mode swaps compile to a single m x m transfer matrix; a Fock matrix element
between N-particle configurations is then the determinant of the N x N
submatrix with rows picked by the output configuration and columns by the
input one (both in increasing mode order, matching the basis convention of
:mod:`anyonsim.states`, so no extra permutation sign appears).  Because the
family is invariant under statistics transmutation, the same numbers are
the amplitudes in every phi sector.

``PA(1, 2)`` is also admitted: its action is dense but strictly local to
the two lowest modes (they have no modes to their left), so evolution
composes determinant blocks with a 2 x 2 rotation on the {empty, doubly
occupied} pair space.  Any other pairing gate, and any distant beam
splitter, is rejected; those circuits are served by the dense engine.
"""

from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import FamilyMismatchError, InvariantBreachError, ParticleNumberMismatch
from .optics import Circuit, GateElement
from .states import AnyonState, occupied_modes, prune

_UNITARY_ATOL = 1e-10


@dataclass(frozen=True)
class SingleParticleUnitary:
    """Transfer matrix of a number-conserving circuit on creation operators."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        u = self.matrix
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InvariantBreachError("transfer matrix must be square")
        dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if dev > _UNITARY_ATOL:
            raise InvariantBreachError(f"transfer matrix is not unitary (deviation {dev:.3e})")

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def _gate_transfer(gate: GateElement, m: int) -> np.ndarray:
    t = np.eye(m, dtype=complex)
    if gate.kind == "PS":
        t[gate.i - 1, gate.i - 1] = cmath.exp(1j * gate.theta)
        return t
    if gate.kind == "BS":
        if abs(gate.i - gate.j) != 1:
            raise FamilyMismatchError(
                f"{gate.label()} is a distant beam splitter; only nearest-neighbour "
                "beam splitters stay in the fast family"
            )
        a, b = gate.i - 1, gate.j - 1
        c, s = np.cos(gate.theta), np.sin(gate.theta)
        t[a, a] = t[b, b] = c
        t[a, b] = t[b, a] = 1j * s
        return t
    if gate.kind == "FSWAP":
        a, b = gate.i - 1, gate.j - 1
        t[a, a] = t[b, b] = 0.0
        t[a, b] = t[b, a] = 1.0
        return t
    raise FamilyMismatchError(f"{gate.label()} is not number-conserving")


def check_family(circuit: Circuit, allow_pa: bool = False) -> None:
    """Raise FamilyMismatchError naming the first out-of-family gate."""
    for gate in circuit.gates:
        if gate.kind in ("PS", "FSWAP"):
            continue
        if gate.kind == "BS":
            if abs(gate.i - gate.j) != 1:
                raise FamilyMismatchError(f"{gate.label()}: distant beam splitters are out of family")
            continue
        # only the ordered pair (1, 2) keeps the same form in every sector;
        # the reversed ordering picks up a sector-dependent pair phase
        if gate.kind == "PA" and allow_pa and (gate.i, gate.j) == (1, 2):
            continue
        raise FamilyMismatchError(f"{gate.label()}: pairing gates other than PA(1,2) are out of family")


def compile_single_particle(circuit: Circuit) -> SingleParticleUnitary:
    """Fold a number-conserving circuit into one transfer matrix.

    Gates compose left to right: the first listed gate multiplies first.
    """
    check_family(circuit, allow_pa=False)
    total = np.eye(circuit.m, dtype=complex)
    for gate in circuit.gates:
        total = _gate_transfer(gate, circuit.m) @ total
    return SingleParticleUnitary(total)


def amplitude_number_conserving(u: SingleParticleUnitary, x: int, y: int) -> complex:
    """Matrix element <y|circuit|x> via the determinant of a submatrix.

    Configurations with different particle numbers have amplitude zero;
    that case is flagged with a :class:`ParticleNumberMismatch` warning.
    """
    n_x, n_y = x.bit_count(), y.bit_count()
    if n_x != n_y:
        warnings.warn(
            f"configurations carry {n_x} and {n_y} particles; amplitude is identically zero",
            ParticleNumberMismatch,
            stacklevel=2,
        )
        return 0.0 + 0.0j
    if n_x == 0:
        return 1.0 + 0.0j
    rows = [k - 1 for k in occupied_modes(y, u.m)]
    cols = [k - 1 for k in occupied_modes(x, u.m)]
    sub = u.matrix[np.ix_(rows, cols)]
    return complex(np.linalg.det(sub))


def _evolve_nc_block(table: dict[int, complex], u: SingleParticleUnitary) -> dict[int, complex]:
    m = u.m
    out: dict[int, complex] = {}
    by_n: dict[int, dict[int, complex]] = {}
    for occ, amp in table.items():
        by_n.setdefault(occ.bit_count(), {})[occ] = amp
    for n, comps in by_n.items():
        if n == 0:
            for occ, amp in comps.items():
                out[occ] = out.get(occ, 0.0) + amp
            continue
        targets = [sum(1 << k for k in picks) for picks in combinations(range(m), n)]
        for z in targets:
            rows = [k - 1 for k in occupied_modes(z, m)]
            total = 0.0 + 0.0j
            for w, amp in comps.items():
                cols = [k - 1 for k in occupied_modes(w, m)]
                total += amp * np.linalg.det(u.matrix[np.ix_(rows, cols)])
            if abs(total) > 0.0:
                out[z] = out.get(z, 0.0) + complex(total)
    return out


def _apply_pa12(table: dict[int, complex], theta: float) -> dict[int, complex]:
    c, s = np.cos(theta), np.sin(theta)
    out: dict[int, complex] = {}
    for occ, amp in table.items():
        local = occ & 3
        if local == 0:
            out[occ] = out.get(occ, 0.0) + c * amp
            out[occ | 3] = out.get(occ | 3, 0.0) + 1j * s * amp
        elif local == 3:
            out[occ] = out.get(occ, 0.0) + c * amp
            out[occ & ~3] = out.get(occ & ~3, 0.0) + 1j * s * amp
        else:
            out[occ] = out.get(occ, 0.0) + amp
    return out


def _evolve_table(table: dict[int, complex], circuit: Circuit) -> dict[int, complex]:
    pending: list[GateElement] = []

    def flush(tab: dict[int, complex]) -> dict[int, complex]:
        if not pending:
            return tab
        seg = Circuit(circuit.m, circuit.phi, tuple(pending))
        pending.clear()
        return _evolve_nc_block(tab, compile_single_particle(seg))

    for gate in circuit.gates:
        if gate.kind == "PA":
            table = flush(table)
            table = _apply_pa12(table, gate.theta)
        else:
            pending.append(gate)
    table = flush(table)
    return prune(table)


def run_circuit_fastpath(state: AnyonState, circuit: Circuit) -> AnyonState:
    """Evolve a state through an in-family circuit without dense exponentials.

    The computation happens on the sector-invariant amplitude table, so the
    result is exact for every phi.
    """
    if state.m != circuit.m:
        raise FamilyMismatchError(f"circuit is over {circuit.m} modes, state over {state.m}")
    if abs(state.phi - circuit.phi) > 1e-12:
        raise FamilyMismatchError(f"circuit sector phi={circuit.phi} does not match state phi={state.phi}")
    check_family(circuit, allow_pa=True)
    evolved = _evolve_table(dict(state.amplitudes), circuit)
    return AnyonState(state.m, state.phi, evolved)


def anyonic_amplitude_via_fastpath(circuit: Circuit, x: int, y: int) -> complex:
    """Amplitude <y|circuit|x> for an in-family circuit, valid in every sector."""
    check_family(circuit, allow_pa=True)
    if not any(g.kind == "PA" for g in circuit.gates):
        return amplitude_number_conserving(compile_single_particle(circuit), x, y)
    evolved = _evolve_table({x: 1.0 + 0.0j}, circuit)
    return complex(evolved.get(y, 0.0))
