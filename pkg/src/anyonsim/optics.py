"""Linear-optical elements, circuits, and induced Bogoliubov transformations.

Gate semantics
--------------
``PS(i, theta)``, ``BS(i, j, theta)`` and ``PA(i, j, theta)`` are the
exponentials of their quadratic generators *in the algebra of the state
they act on*; evolution is computed by a dense matrix exponential of the
generator restricted to the invariant sector (fixed particle number for
PS/BS, fixed parity for PA).  Closed-form actions are used only as test
oracles.

``FSWAP(i, j)`` is the statistics-mapped image of the fermionic mode swap:
it acts on the amplitude table exactly as the fermionic closed form
``1 - n_i - n_j + (hop)`` does at phi = 0.  For adjacent modes this equals
the exponential of the native generator in every sector; for distant modes
at phi != 0 the mapped action is the defining one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from .errors import InvariantBreachError, PreconditionError
from .operators import (
    ANNIHILATE,
    CREATE,
    LadderTerm,
    OperatorExpr,
    hopping,
    number,
    operator_matrix,
    pair_source,
)
from .states import AnyonState, prune
from .transmute import anyonize, fermionize

GATE_KINDS = ("PS", "BS", "PA", "FSWAP")

#: dense sector exponentials check Hermiticity of the generator to this
_HERM_ATOL = 1e-12


@dataclass(frozen=True)
class GateElement:
    """A tagged optical element with 1-based mode indices and angle in radians."""

    kind: str
    i: int
    j: int | None = None
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise PreconditionError(f"unknown gate kind {self.kind!r}")
        if self.i < 1 or (self.j is not None and self.j < 1):
            raise PreconditionError(f"gate {self} has a mode index below 1")
        if self.kind == "PS":
            if self.j is not None or self.theta is None:
                raise PreconditionError("PS takes one mode and an angle")
        elif self.kind == "FSWAP":
            if self.j is None or self.theta is not None:
                raise PreconditionError("FSWAP takes two modes and no angle")
            if self.j == self.i:
                raise PreconditionError("FSWAP needs two distinct modes")
        else:
            if self.j is None or self.theta is None:
                raise PreconditionError(f"{self.kind} takes two modes and an angle")
            if self.j == self.i:
                raise PreconditionError(f"{self.kind} needs two distinct modes")

    def modes(self) -> tuple[int, ...]:
        return (self.i,) if self.j is None else (self.i, self.j)

    def label(self) -> str:
        inner = ",".join(str(k) for k in self.modes())
        if self.theta is None:
            return f"{self.kind}({inner})"
        return f"{self.kind}({inner}; theta={self.theta:g})"


def ps(i: int, theta: float) -> GateElement:
    return GateElement("PS", i, None, theta)


def bs(i: int, j: int, theta: float) -> GateElement:
    return GateElement("BS", i, j, theta)


def pa(i: int, j: int, theta: float) -> GateElement:
    return GateElement("PA", i, j, theta)


def fswap(i: int, j: int) -> GateElement:
    return GateElement("FSWAP", i, j, None)


@dataclass(frozen=True)
class Circuit:
    """An ordered gate sequence over m modes in a fixed statistics sector."""

    m: int
    phi: float
    gates: tuple[GateElement, ...] = ()

    def __post_init__(self) -> None:
        for g in self.gates:
            for k in g.modes():
                if k > self.m:
                    raise PreconditionError(f"gate {g.label()} uses mode {k} > m={self.m}")

    def reversed_dagger(self) -> "Circuit":
        """The inverse circuit: reversed order, negated angles."""
        inv = []
        for g in reversed(self.gates):
            if g.theta is None:
                inv.append(g)
            else:
                inv.append(GateElement(g.kind, g.i, g.j, -g.theta))
        return Circuit(self.m, self.phi, tuple(inv))


def generator_expr(gate: GateElement, m: int) -> OperatorExpr:
    """The Hermitian generator of gate = exp(i * generator), angle folded in."""
    if gate.kind == "PS":
        return gate.theta * number(m, gate.i)
    if gate.kind == "BS":
        return gate.theta * hopping(m, gate.i, gate.j)
    if gate.kind == "PA":
        return gate.theta * pair_source(m, gate.i, gate.j)
    raise PreconditionError(f"{gate.kind} has no single generator form here")


def _number_sector(m: int, n: int) -> list[int]:
    return [sum(1 << (k) for k in picks) for picks in combinations(range(m), n)]


def _parity_sector(m: int, p: int) -> list[int]:
    return [occ for occ in range(1 << m) if occ.bit_count() % 2 == p]


def _apply_sector_exponential(state: AnyonState, expr: OperatorExpr, sector_of) -> AnyonState:
    groups: dict[int, dict[int, complex]] = {}
    for occ, amp in state.amplitudes.items():
        groups.setdefault(sector_of(occ), {})[occ] = amp
    out: dict[int, complex] = {}
    for key, comps in groups.items():
        basis = _sector_basis_cache(state.m, sector_of, key)
        h = operator_matrix(expr, state.phi, basis)
        if np.max(np.abs(h - h.conj().T)) > _HERM_ATOL:
            raise InvariantBreachError("gate generator is not Hermitian on its sector")
        u = expm(1j * h)
        vec = np.zeros(len(basis), dtype=complex)
        index = {occ: k for k, occ in enumerate(basis)}
        for occ, amp in comps.items():
            vec[index[occ]] = amp
        vec = u @ vec
        for occ, k in index.items():
            if abs(vec[k]) > 0.0:
                out[occ] = out.get(occ, 0.0) + vec[k]
    return AnyonState(state.m, state.phi, prune(out))


def _sector_basis_cache(m: int, sector_of, key: int) -> list[int]:
    # sector_of is one of the two module-level sector functions; rebuild cheaply
    if sector_of is _occ_count:
        return _number_sector(m, key)
    return _parity_sector(m, key)


def _occ_count(occ: int) -> int:
    return occ.bit_count()


def _occ_parity(occ: int) -> int:
    return occ.bit_count() % 2


def apply_gate(state: AnyonState, gate: GateElement) -> AnyonState:
    """Exact unitary action of one optical element on a state."""
    for k in gate.modes():
        if k > state.m:
            raise PreconditionError(f"gate {gate.label()} uses mode {k} > m={state.m}")
    if gate.kind == "FSWAP":
        return apply_fswap(state, gate.i, gate.j)
    expr = generator_expr(gate, state.m)
    sector = _occ_parity if gate.kind == "PA" else _occ_count
    return _apply_sector_exponential(state, expr, sector)


def apply_fswap(state: AnyonState, i: int, j: int) -> AnyonState:
    """Statistics-mapped fermionic mode swap between modes i and j.

    Acts on the amplitude table via the fermionic closed form: empty pairs
    are fixed, doubly occupied pairs flip sign, and single occupations hop
    with the parity of the modes strictly between i and j.
    """
    if i == j:
        raise PreconditionError("FSWAP needs two distinct modes")
    for k in (i, j):
        if not 1 <= k <= state.m:
            raise PreconditionError(f"mode index {k} out of range 1..{state.m}")
    lo, hi = min(i, j), max(i, j)
    bit_i, bit_j = 1 << (i - 1), 1 << (j - 1)
    between = ((1 << (hi - 1)) - 1) ^ ((1 << lo) - 1)
    out: dict[int, complex] = {}
    for occ, amp in state.amplitudes.items():
        oi, oj = occ & bit_i != 0, occ & bit_j != 0
        if oi == oj:
            out[occ] = out.get(occ, 0.0) + (-amp if oi else amp)
        else:
            sign = -1.0 if (occ & between).bit_count() % 2 else 1.0
            swapped = occ ^ bit_i ^ bit_j
            out[swapped] = out.get(swapped, 0.0) + sign * amp
    return AnyonState(state.m, state.phi, prune(out))


def run_circuit(state: AnyonState, circuit: Circuit) -> AnyonState:
    """Left-to-right application of a circuit (first listed gate acts first)."""
    if state.m != circuit.m:
        raise PreconditionError(f"circuit is over {circuit.m} modes, state over {state.m}")
    if abs(state.phi - circuit.phi) > 1e-12:
        raise PreconditionError(f"circuit sector phi={circuit.phi} does not match state phi={state.phi}")
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def _nn_fswap_chain(a: int, b: int) -> list[GateElement]:
    """Expand a distant mode swap into nearest-neighbour swaps (a < b)."""
    if b == a + 1:
        return [fswap(a, b)]
    ladder = [fswap(k, k + 1) for k in range(a, b - 1)]
    return ladder + [fswap(b - 1, b)] + ladder[::-1]


def decompose_distant(gate: GateElement) -> list[GateElement]:
    """Rewrite a PS/BS/PA on arbitrary modes over the canonical generating set.

    The output uses only PS on mode 1, BS/PA on modes (1, 2), and
    nearest-neighbour FSWAPs; the dense products agree at phi = 0.  FSWAP
    inputs are expanded into nearest-neighbour swaps directly.
    """
    if gate.kind == "PS":
        if gate.i == 1:
            return [gate]
        chain = _nn_fswap_chain(1, gate.i)
        return chain + [ps(1, gate.theta)] + chain[::-1]
    if gate.kind == "FSWAP":
        lo, hi = sorted((gate.i, gate.j))
        return _nn_fswap_chain(lo, hi)
    if gate.kind == "BS":
        i, j = sorted((gate.i, gate.j))
        theta = gate.theta
    else:  # PA: antisymmetric under swapping the pair, so flip the angle
        i, j = gate.i, gate.j
        theta = gate.theta
        if i > j:
            i, j, theta = j, i, -theta
    if (i, j) == (1, 2):
        return [GateElement(gate.kind, 1, 2, theta)]
    chain: list[GateElement] = []
    if i != 1:
        chain += _nn_fswap_chain(1, i)
    if j != 2:
        chain += _nn_fswap_chain(2, j)
    return chain + [GateElement(gate.kind, 1, 2, theta)] + chain[::-1]


def circuit_to_json_dict(circuit: Circuit) -> dict:
    gates = []
    for g in circuit.gates:
        entry: dict = {"kind": g.kind, "i": g.i}
        if g.j is not None:
            entry["j"] = g.j
        if g.theta is not None:
            entry["theta"] = g.theta
        gates.append(entry)
    return {"m": circuit.m, "phi": circuit.phi, "gates": gates}


def circuit_from_json_dict(data: dict) -> Circuit:
    gates = []
    for entry in data["gates"]:
        kind = entry["kind"]
        if kind not in GATE_KINDS:
            raise PreconditionError(f"unknown gate kind {kind!r}")
        gates.append(
            GateElement(
                kind,
                int(entry["i"]),
                int(entry["j"]) if "j" in entry and entry["j"] is not None else None,
                float(entry["theta"]) if "theta" in entry and entry["theta"] is not None else None,
            )
        )
    return Circuit(int(data["m"]), float(data["phi"]), tuple(gates))


@dataclass(frozen=True)
class BogoliubovPair:
    """Matrices (U, V) of a multi-mode canonical transformation.

    The pair describes the transformation of creation operators,
    ``a+_i -> sum_j U_ij a+_j + sum_k V_ik a_k``.  ``V = 0`` marks a pure
    change of single-particle basis.  Pairs with V != 0 must be built via
    :meth:`from_generator` so that state evolution has a well-defined
    exponential form (no matrix-logarithm branch choice is ever taken).
    """

    u: np.ndarray
    v: np.ndarray
    generator: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_rotation(cls, u: Sequence[Sequence[complex]]) -> "BogoliubovPair":
        u = np.asarray(u, dtype=complex)
        return cls(u, np.zeros_like(u))

    @classmethod
    def from_generator(cls, a: Sequence[Sequence[complex]], b: Sequence[Sequence[complex]]) -> "BogoliubovPair":
        """Pair induced by the quadratic Hamiltonian with hopping a and pairing b.

        ``a`` must be Hermitian, ``b`` antisymmetric; the generator is
        ``sum a_kl n-conserving terms + (1/2) sum (b_kl a+_k a+_l + h.c.)``.
        """
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        m = a.shape[0]
        if a.shape != (m, m) or b.shape != (m, m):
            raise PreconditionError("generator matrices must be square and equal-sized")
        if np.max(np.abs(a - a.conj().T)) > 1e-12:
            raise PreconditionError("hopping block of the generator must be Hermitian")
        if np.max(np.abs(b + b.T)) > 1e-12:
            raise PreconditionError("pairing block of the generator must be antisymmetric")
        big = np.block([[a.T, b.conj()], [-b, -a]])
        exp_big = expm(1j * big)
        return cls(exp_big[:m, :m], exp_big[:m, m:], generator=(a, b))

    def mode_count(self) -> int:
        return self.u.shape[0]

    def is_rotation(self, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.v)) <= atol)

    def validate(self, atol: float = 1e-10) -> None:
        m = self.u.shape[0]
        if self.u.shape != (m, m) or self.v.shape != (m, m):
            raise PreconditionError("U and V must be square matrices of equal size")
        eye = np.eye(m)
        r1 = np.max(np.abs(self.u @ self.u.conj().T + self.v @ self.v.conj().T - eye))
        r2 = np.max(np.abs(self.u @ self.v.T + self.v @ self.u.T))
        if r1 > atol or r2 > atol:
            raise PreconditionError(
                f"not a canonical pair: |UU+ + VV+ - 1| = {r1:.3e}, |UV^T + VU^T| = {r2:.3e}"
            )


def _quadratic_expr(m: int, a: np.ndarray, b: np.ndarray) -> OperatorExpr:
    terms: list[LadderTerm] = []
    for k in range(m):
        for l in range(m):
            if abs(a[k, l]) > 1e-15:
                terms.append(LadderTerm(complex(a[k, l]), ((k + 1, CREATE), (l + 1, ANNIHILATE))))
            if abs(b[k, l]) > 1e-15:
                terms.append(LadderTerm(0.5 * complex(b[k, l]), ((k + 1, CREATE), (l + 1, CREATE))))
                terms.append(LadderTerm(0.5 * complex(b[k, l]).conjugate(), ((l + 1, ANNIHILATE), (k + 1, ANNIHILATE))))
    return OperatorExpr(m, tuple(terms))


def _rotated_create(table: dict[int, complex], m: int, row: np.ndarray) -> dict[int, complex]:
    """Apply sum_j row[j] * a+_{j+1} (fermionic sector) to an amplitude table."""
    from .states import create_component

    out: dict[int, complex] = {}
    for occ, amp in table.items():
        for jj in range(m):
            c = row[jj]
            if abs(c) <= 1e-16:
                continue
            step = create_component(0.0, occ, jj + 1)
            if step is None:
                continue
            occ2, phase = step
            out[occ2] = out.get(occ2, 0.0) + amp * c * phase
    return out


def apply_induced_bogoliubov(state: AnyonState, pair: BogoliubovPair) -> AnyonState:
    """Apply the sector-conjugated canonical transformation to a state.

    Implemented as fermionize -> fermionic action -> map back.  For V = 0
    each basis component's creation string is expanded through U directly;
    otherwise the dense exponential of the stored generator acts on the
    parity sectors.
    """
    pair.validate()
    if pair.mode_count() != state.m:
        raise PreconditionError(f"transformation is over {pair.mode_count()} modes, state over {state.m}")
    psi = fermionize(state)
    if pair.is_rotation():
        out: dict[int, complex] = {}
        for occ, amp in psi.amplitudes.items():
            table = {0: amp}
            for mode in reversed([k + 1 for k in range(state.m) if occ >> k & 1]):
                table = _rotated_create(table, state.m, pair.u[mode - 1])
            for occ2, a2 in table.items():
                out[occ2] = out.get(occ2, 0.0) + a2
        result = AnyonState(state.m, 0.0, prune(out))
    else:
        if pair.generator is None:
            raise PreconditionError("pairing transformations must carry their quadratic generator")
        expr = _quadratic_expr(state.m, *pair.generator)
        result = _apply_sector_exponential(psi, expr, _occ_parity)
    return anyonize(result, state.phi)
