"""Ladder operators for phase-deformed statistics, step by step.

Builds a few Fock states, applies creation/annihilation operators, and
shows how the reordering phase interpolates between fermionic signs
(phi = 0) and commuting hardcore bosons (phi = pi).
"""

import numpy as np

from anyonsim import (
    apply_annihilate,
    apply_create,
    basis_state,
    inner_product,
    occ_to_string,
    vacuum,
)


def show(label, state):
    parts = [
        f"{occ_to_string(occ, state.m)}: {amp:.4f}"
        for occ, amp in sorted(state.amplitudes.items())
    ]
    print(f"  {label:30s} " + ("  ".join(parts) if parts else "(zero vector)"))


print("Creating on top of an occupied neighbour picks up the exchange phase")
print("sigma = -exp(-i * phi) per crossing:\n")
for phi in (0.0, np.pi / 2, np.pi):
    st = apply_create(basis_state("1000", phi), 2)
    show(f"phi = {phi:.3f}: a+_2 |1000> ->", st)

print("\nAt phi = pi distinct-mode creations commute (hardcore bosons):")
for phi in (0.0, np.pi):
    a = apply_create(apply_create(vacuum(3, phi), 1), 3)
    b = apply_create(apply_create(vacuum(3, phi), 3), 1)
    show(f"phi = {phi:.3f}: a+_3 a+_1 |0> ->", b)
    show(f"phi = {phi:.3f}: a+_1 a+_3 |0> ->", a)

print("\nThe annihilator is the exact adjoint; <psi| a+_i |chi> == <a_i psi | chi>:")
rng = np.random.default_rng(1)
m, phi = 4, 1.7
amps = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
amps /= np.linalg.norm(amps)
from anyonsim import AnyonState

psi = AnyonState(m, phi, {occ: complex(a) for occ, a in enumerate(amps)})
chi = AnyonState(m, phi, dict(reversed(psi.amplitudes.items())))
lhs = inner_product(psi, apply_create(chi, 2))
rhs = inner_product(apply_annihilate(psi, 2), chi)
print(f"  difference: {abs(lhs - rhs):.2e}")
