"""Named example states and circuits used by the CLI and the demos."""

from __future__ import annotations

import math

from .optics import Circuit, bs
from .states import AnyonState

_SQ2 = math.sqrt(0.5)


def split_pair(phi: float = 0.0) -> AnyonState:
    """Four modes, two particles: one pinned to mode 1, one split over modes 2 and 4.

    Manifestly a dressed Fock configuration, hence separable; feeding it
    through a beam splitter on modes (1, 2) produces the state whose naive
    single-particle entropy picks up a spurious phi dependence.
    """
    return AnyonState(4, phi, {0b0011: _SQ2, 0b1001: _SQ2})


def two_slater(phi: float = 0.0) -> AnyonState:
    """Four modes, two particles, pair rank two: (12) + (34) with equal weight."""
    return AnyonState(4, phi, {0b0011: _SQ2, 0b1100: _SQ2})


def split_pair_circuit(theta: float, phi: float = 0.0) -> Circuit:
    """The beam splitter on modes (1, 2) driving the split-pair example."""
    return Circuit(4, phi, (bs(1, 2, theta),))


PRESETS = {
    "split-pair": split_pair,
    "two-slater": two_slater,
}
