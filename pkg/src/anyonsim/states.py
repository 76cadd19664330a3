"""Sparse Fock-space states for one-dimensional fermionic anyons.

Conventions used throughout the package:

* Modes are labelled 1..m.
* A basis configuration is an integer bitmask with bit (i - 1) holding the
  occupation of mode i; the string form ``"0101"`` lists mode 1 first.
* The basis ket for a configuration is the one obtained by applying
  creation operators in strictly increasing mode order to the vacuum.
* Statistics enter through the reordering phase picked up when a creation
  operator for mode i is moved rightward past an occupied mode k < i: each
  crossing contributes ``-exp(i * s * phi)``.  The sign ``s`` is pinned by
  the exchange-relation check suite (see :mod:`anyonsim.checks`), not
  transcribed by hand; annihilation carries the conjugate phase.

States are immutable; every operation returns a new state.  Amplitudes with
magnitude below :data:`PRUNE_EPS` are dropped after each operator
application.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import PreconditionError

TWO_PI = 2.0 * 3.141592653589793

#: amplitudes below this magnitude are pruned after operator application
PRUNE_EPS = 1e-14
#: tolerance on |  <psi|psi> - 1 | for treating a state as normalized
NORM_ATOL = 1e-10

# Exchange sign s in the reordering phase (-exp(i*s*phi))**crossings.
# Fixed by requiring the deformed exchange relations (with epsilon = +1 for
# i < j) to hold on every basis state; flipping it is equivalent to
# phi -> -phi and is caught by the algebra suite.
_REORDER_SIGN = -1.0


def wrap_phi(phi: float) -> float:
    """Reduce a statistics parameter into the canonical window [0, 2*pi).

    The sector algebras are exactly 2*pi-periodic, so this is lossless.
    """
    out = phi % TWO_PI
    return 0.0 if out == TWO_PI else out


def occ_from_string(s: str) -> int:
    """Parse an occupation string like ``"0101"`` (mode 1 first) to a bitmask."""
    occ = 0
    for pos, ch in enumerate(s):
        if ch == "1":
            occ |= 1 << pos
        elif ch != "0":
            raise PreconditionError(f"occupation string must be over {{0,1}}, got {s!r}")
    return occ


def occ_to_string(occ: int, m: int) -> str:
    """Render a bitmask as an occupation string, mode 1 first."""
    return "".join("1" if occ >> i & 1 else "0" for i in range(m))


def occ_from_bits(bits: Iterable[int]) -> int:
    """Build a bitmask from a sequence of per-mode occupations (mode 1 first)."""
    occ = 0
    for pos, b in enumerate(bits):
        if b not in (0, 1):
            raise PreconditionError(f"occupations must be 0 or 1, got {b!r}")
        occ |= b << pos
    return occ


def occupations(occ: int, m: int) -> tuple[int, ...]:
    """Per-mode occupations of a bitmask, mode 1 first."""
    return tuple(occ >> i & 1 for i in range(m))


def occupied_modes(occ: int, m: int) -> tuple[int, ...]:
    """1-based indices of occupied modes, increasing."""
    return tuple(i for i in range(1, m + 1) if occ >> (i - 1) & 1)


def n_left(occ: int, i: int) -> int:
    """Number of occupied modes strictly below mode i."""
    return (occ & ((1 << (i - 1)) - 1)).bit_count()


def reorder_phase(phi: float, crossings: int) -> complex:
    """Phase for moving a creation operator past ``crossings`` occupied modes."""
    if crossings == 0:
        return 1.0 + 0.0j
    return ((-1.0) ** crossings) * cmath.exp(1j * _REORDER_SIGN * phi * crossings)


def _check_mode(m: int, i: int) -> None:
    if not 1 <= i <= m:
        raise PreconditionError(f"mode index {i} out of range 1..{m}")


@dataclass(frozen=True)
class AnyonState:
    """A pure state of fermionic anyons as a sparse amplitude table.

    ``amplitudes`` maps occupation bitmasks to complex amplitudes in the
    increasing-creation-order basis.  The table is not auto-normalized;
    use :meth:`normalized` explicitly.
    """

    m: int
    phi: float
    amplitudes: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.m < 1:
            raise PreconditionError(f"mode count must be >= 1, got {self.m}")
        if not 0.0 <= self.phi < TWO_PI:
            raise PreconditionError(f"statistical parameter must lie in [0, 2*pi), got {self.phi}")
        top = 1 << self.m
        for occ in self.amplitudes:
            if not 0 <= occ < top:
                raise PreconditionError(f"occupation bitmask {occ} does not fit {self.m} modes")

    def amplitude(self, occ: int | str) -> complex:
        if isinstance(occ, str):
            occ = occ_from_string(occ)
        return complex(self.amplitudes.get(occ, 0.0))

    def norm(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values()) ** 0.5

    def is_normalized(self, atol: float = NORM_ATOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= atol

    def normalized(self) -> "AnyonState":
        n = self.norm()
        if n == 0.0:
            raise PreconditionError("cannot normalize the zero vector")
        return AnyonState(self.m, self.phi, {k: v / n for k, v in self.amplitudes.items()})

    def particle_number(self) -> int | None:
        """The common particle number of all components, or None if mixed across sectors."""
        counts = {occ.bit_count() for occ in self.amplitudes}
        if len(counts) == 1:
            return counts.pop()
        return None


def vacuum(m: int, phi: float = 0.0) -> AnyonState:
    """The m-mode vacuum in the phi statistics sector."""
    if m < 1:
        raise PreconditionError(f"mode count must be >= 1, got {m}")
    return AnyonState(m, phi, {0: 1.0 + 0.0j})


def basis_state(occ: int | str | Iterable[int], phi: float = 0.0, m: int | None = None) -> AnyonState:
    """The Fock basis ket for an occupation pattern.

    ``occ`` may be a string like ``"1010"``, a sequence of 0/1, or a raw
    bitmask (in which case ``m`` is required).
    """
    if isinstance(occ, str):
        mask, width = occ_from_string(occ), len(occ)
    elif isinstance(occ, int):
        if m is None:
            raise PreconditionError("mode count m is required when occ is a bitmask")
        mask, width = occ, m
    else:
        bits = tuple(occ)
        mask, width = occ_from_bits(bits), len(bits)
    if m is not None and m != width:
        raise PreconditionError(f"occupation width {width} does not match m={m}")
    return AnyonState(width, phi, {mask: 1.0 + 0.0j})


def prune(table: dict[int, complex], eps: float = PRUNE_EPS) -> dict[int, complex]:
    """Drop entries with magnitude below ``eps``."""
    return {occ: amp for occ, amp in table.items() if abs(amp) > eps}


def create_component(phi: float, occ: int, i: int) -> tuple[int, complex] | None:
    """Action of the mode-i creation operator on a single basis ket.

    Returns the new bitmask and phase, or None when mode i is occupied.
    """
    bit = 1 << (i - 1)
    if occ & bit:
        return None
    return occ | bit, reorder_phase(phi, n_left(occ, i))


def annihilate_component(phi: float, occ: int, i: int) -> tuple[int, complex] | None:
    """Adjoint of :func:`create_component`; None when mode i is empty."""
    bit = 1 << (i - 1)
    if not occ & bit:
        return None
    return occ ^ bit, reorder_phase(phi, n_left(occ, i)).conjugate()


def apply_create(state: AnyonState, i: int) -> AnyonState:
    """Apply the creation operator for mode i; occupied components vanish."""
    _check_mode(state.m, i)
    out: dict[int, complex] = {}
    for occ, amp in state.amplitudes.items():
        res = create_component(state.phi, occ, i)
        if res is not None:
            out[res[0]] = amp * res[1]
    return AnyonState(state.m, state.phi, prune(out))


def apply_annihilate(state: AnyonState, i: int) -> AnyonState:
    """Apply the annihilation operator for mode i; empty components vanish."""
    _check_mode(state.m, i)
    out: dict[int, complex] = {}
    for occ, amp in state.amplitudes.items():
        res = annihilate_component(state.phi, occ, i)
        if res is not None:
            out[res[0]] = amp * res[1]
    return AnyonState(state.m, state.phi, prune(out))


def apply_number(state: AnyonState, i: int) -> AnyonState:
    """Apply the number operator for mode i (keeps occupied components only)."""
    _check_mode(state.m, i)
    bit = 1 << (i - 1)
    return AnyonState(state.m, state.phi, {occ: amp for occ, amp in state.amplitudes.items() if occ & bit})


def inner_product(a: AnyonState, b: AnyonState) -> complex:
    """Hermitian inner product <a|b>; both states must share m and phi."""
    if a.m != b.m:
        raise PreconditionError(f"mode counts differ: {a.m} vs {b.m}")
    if abs(a.phi - b.phi) > 1e-12:
        raise PreconditionError(f"statistics sectors differ: phi={a.phi} vs {b.phi}")
    small, large = (a.amplitudes, b.amplitudes) if len(a.amplitudes) <= len(b.amplitudes) else (b.amplitudes, a.amplitudes)
    total = 0.0 + 0.0j
    for occ in small:
        if occ in large:
            total += a.amplitudes[occ].conjugate() * b.amplitudes[occ]
    return total


def add_states(a: AnyonState, b: AnyonState) -> AnyonState:
    """Componentwise sum (same m and phi required)."""
    if a.m != b.m or abs(a.phi - b.phi) > 1e-12:
        raise PreconditionError("cannot add states from different spaces")
    out = dict(a.amplitudes)
    for occ, amp in b.amplitudes.items():
        out[occ] = out.get(occ, 0.0) + amp
    return AnyonState(a.m, a.phi, prune(out))


def scale_state(state: AnyonState, c: complex) -> AnyonState:
    return AnyonState(state.m, state.phi, prune({occ: c * amp for occ, amp in state.amplitudes.items()}))


def state_to_json_dict(state: AnyonState) -> dict:
    """Serialize to the wire format ``{"m", "phi", "amplitudes": [{"occ","re","im"}]}``."""
    return {
        "m": state.m,
        "phi": state.phi,
        "amplitudes": [
            {"occ": occ_to_string(occ, state.m), "re": float(amp.real), "im": float(amp.imag)}
            for occ, amp in sorted(state.amplitudes.items())
        ],
    }


def state_from_json_dict(data: dict) -> AnyonState:
    m = int(data["m"])
    phi = float(data["phi"])
    table: dict[int, complex] = {}
    for entry in data["amplitudes"]:
        occ = occ_from_string(entry["occ"])
        if len(entry["occ"]) != m:
            raise PreconditionError(f"occupation {entry['occ']!r} does not have {m} modes")
        table[occ] = table.get(occ, 0.0) + complex(float(entry["re"]), float(entry["im"]))
    return AnyonState(m, phi, table)
