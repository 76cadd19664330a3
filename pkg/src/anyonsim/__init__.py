"""Fock-space toolkit for one-dimensional fermionic anyons.

The package simulates m-mode particles whose ladder operators obey
phase-deformed exchange relations controlled by a statistical parameter
phi (fermions at phi = 0, hardcore bosons at phi = pi).  It provides exact
sparse state evolution under linear-optical circuits, the operator maps
that move expressions between statistics sectors, a determinant-based fast
path for the classically simulable circuit family, and particle-
entanglement analysis (reduced density matrices, minimal-entropy modes,
pair normal forms, separability decisions).
"""

from .errors import (
    FamilyMismatchError,
    InvariantBreachError,
    ParticleNumberMismatch,
    PreconditionError,
)
from .states import (
    AnyonState,
    apply_annihilate,
    apply_create,
    apply_number,
    basis_state,
    inner_product,
    occ_from_string,
    occ_to_string,
    state_from_json_dict,
    state_to_json_dict,
    vacuum,
)
from .operators import (
    ANNIHILATE,
    CREATE,
    LadderTerm,
    OperatorExpr,
    annihilation,
    apply_operator_expr,
    creation,
    hopping,
    identity_expr,
    number,
    pair_source,
)
from .transmute import TransmutationMap, anyonize, fermionize, transmute_operator, transmute_state
from .optics import (
    BogoliubovPair,
    Circuit,
    GateElement,
    apply_fswap,
    apply_gate,
    apply_induced_bogoliubov,
    bs,
    circuit_from_json_dict,
    circuit_to_json_dict,
    decompose_distant,
    fswap,
    pa,
    ps,
    run_circuit,
)
from .fastpath import (
    SingleParticleUnitary,
    amplitude_number_conserving,
    anyonic_amplitude_via_fastpath,
    compile_single_particle,
    run_circuit_fastpath,
)
from .entanglement import (
    DensityMatrix,
    MinimalEntropyModes,
    SeparabilityReport,
    SlaterDecomposition,
    TwoParticleCoefficients,
    is_separable,
    minimal_entropy_modes,
    one_body_rdm,
    particle_trace_rdm,
    reconstruct_from_slater,
    slater_decompose,
    two_particle_coefficients,
    von_neumann_entropy,
)
from .presets import PRESETS, split_pair, split_pair_circuit, two_slater

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
