"""Reduced density matrices, entanglement measures, and separability.

Two distinct reductions coexist for particle states:

* the *particle partial trace* integrates out particles by their position
  in the creation string; for exchanged orderings the deformed statistics
  inject explicit phases, which is exactly the mechanism that makes the
  naive single-particle entropy sector-dependent;
* the *one-body matrix* of ladder-bilinear expectations, whose spectrum in
  the fermionic sector is sector-invariant and yields the minimal-entropy
  mode representation that actually decides separability.

Entropies are reported in bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvariantBreachError, PreconditionError
from .states import AnyonState, apply_annihilate, inner_product
from .transmute import fermionize

_HERM_ATOL = 1e-10
_EIG_FLOOR = -1e-10
_EIG_CUT = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """A trace-one Hermitian positive matrix with validated invariants."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise InvariantBreachError("density matrix must be square")
        if np.max(np.abs(mat - mat.conj().T)) > _HERM_ATOL:
            raise InvariantBreachError("density matrix is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > _HERM_ATOL:
            raise InvariantBreachError("density matrix trace must be one")
        if np.min(np.linalg.eigvalsh(mat)) < _EIG_FLOOR:
            raise InvariantBreachError("density matrix has a significantly negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def binary_entropy(p: float) -> float:
    """Shannon entropy of (p, 1-p) in bits, with 0 log 0 = 0."""
    p = min(1.0, max(0.0, p))
    out = 0.0
    for q in (p, 1.0 - p):
        if q > _EIG_CUT:
            out -= q * np.log2(q)
    return float(out)


def von_neumann_entropy(rho: DensityMatrix | np.ndarray) -> float:
    """Spectral entropy in bits; tiny negative eigenvalues are clamped to zero."""
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if np.max(np.abs(mat - mat.conj().T)) > _HERM_ATOL:
        raise PreconditionError("entropy requires a Hermitian matrix")
    lam = np.linalg.eigvalsh(mat)
    lam = np.clip(lam, 0.0, None)
    lam = lam[lam > _EIG_CUT]
    return float(-(lam * np.log2(lam)).sum())


def _definite_particle_number(state: AnyonState) -> int:
    n = state.particle_number()
    if n is None:
        raise PreconditionError("state mixes particle-number sectors")
    return n


def one_body_matrix(state: AnyonState) -> np.ndarray:
    """Raw matrix of ladder bilinears, entry (k, l) = <a+_l a_k>; trace = N."""
    lowered = [apply_annihilate(state, k) for k in range(1, state.m + 1)]
    mat = np.empty((state.m, state.m), dtype=complex)
    for k in range(state.m):
        mat[k, k] = inner_product(lowered[k], lowered[k])
        for l in range(k + 1, state.m):
            val = inner_product(lowered[l], lowered[k])
            mat[k, l] = val
            mat[l, k] = val.conjugate()
    return mat


def one_body_rdm(state: AnyonState) -> DensityMatrix:
    """Trace-one one-body reduced density matrix of a definite-N state."""
    n = _definite_particle_number(state)
    if n < 1:
        raise PreconditionError("one-body reduction needs at least one particle")
    return DensityMatrix(one_body_matrix(state) / n)


def _chain_amplitudes(state: AnyonState, depth: int) -> dict[tuple[int, ...], complex]:
    """Vacuum amplitudes of all ordered annihilation chains of the given depth.

    Entry (i_1, ..., i_N) is the amplitude left on the vacuum after
    applying the mode-i_1 annihilator first, then i_2, and so on; the
    statistics phases of each hop are produced by the ladder machinery.
    """
    frontier: dict[tuple[int, ...], AnyonState] = {(): state}
    for _ in range(depth):
        nxt: dict[tuple[int, ...], AnyonState] = {}
        for prefix, st in frontier.items():
            for i in range(1, state.m + 1):
                lowered = apply_annihilate(st, i)
                if lowered.amplitudes:
                    nxt[prefix + (i,)] = lowered
        frontier = nxt
    return {chain: st.amplitudes.get(0, 0.0 + 0.0j) for chain, st in frontier.items()}


def particle_trace_rdm(state: AnyonState, keep: str | int = "y") -> DensityMatrix:
    """Single-particle state after tracing out all other particles.

    For two-particle states ``keep`` is ``"x"`` (first slot of the creation
    string; tracing the second injects exchange phases) or ``"y"`` (second
    slot; the traced sum runs with no extra phase).  For general N an
    integer slot 1..N may be kept.  The result is trace-normalized.
    """
    n = _definite_particle_number(state)
    if isinstance(keep, str):
        if keep not in ("x", "y"):
            raise PreconditionError("keep must be 'x', 'y', or a slot index")
        if n != 2:
            raise PreconditionError("the x/y form of the trace applies to two-particle states")
        slot = 1 if keep == "x" else 2
    else:
        slot = keep
    if not 1 <= slot <= n:
        raise PreconditionError(f"kept slot {slot} out of range 1..{n}")
    amps = _chain_amplitudes(state, n)
    buckets: dict[tuple[int, ...], list[tuple[int, complex]]] = {}
    for chain, value in amps.items():
        ctx = chain[: slot - 1] + chain[slot:]
        buckets.setdefault(ctx, []).append((chain[slot - 1], value))
    mat = np.zeros((state.m, state.m), dtype=complex)
    for entries in buckets.values():
        for i, vi in entries:
            for j, vj in entries:
                mat[i - 1, j - 1] += vi * vj.conjugate()
    tr = np.trace(mat).real
    if tr <= 0.0:
        raise PreconditionError("particle trace of the zero vector")
    return DensityMatrix(mat / tr)


class MinimalEntropyModes(NamedTuple):
    """Eigenmodes of the sector-invariant one-body matrix.

    ``mode_basis`` holds one mode per column (descending occupation);
    ``occupations`` are the per-mode eigenvalues in [0, 1], whose binary
    entropies sum to ``e_sp``.
    """

    mode_basis: np.ndarray
    e_sp: float
    occupations: np.ndarray


def minimal_entropy_modes(state: AnyonState) -> MinimalEntropyModes:
    """Mode representation minimizing the summed per-mode binary entropy.

    Computed from the fermionic-sector one-body matrix, whose eigenvalues
    are independent of the statistics tag of the input.
    """
    _definite_particle_number(state)
    mat = one_body_matrix(fermionize(state))
    evals, evecs = np.linalg.eigh(mat)
    order = np.argsort(evals)[::-1]
    evals = evals[order].real
    evecs = evecs[:, order]
    if np.min(evals) < _EIG_FLOOR or np.max(evals) > 1.0 - _EIG_FLOOR:
        raise InvariantBreachError("mode occupations must lie in [0, 1]")
    occ = np.clip(evals, 0.0, 1.0)
    e_sp = float(sum(binary_entropy(p) for p in occ))
    return MinimalEntropyModes(evecs, e_sp, occ)


@dataclass(frozen=True)
class TwoParticleCoefficients:
    """Antisymmetric coefficient matrix of a two-particle state.

    Entry (i, j) with i < j is the amplitude on the configuration with
    modes i and j occupied (increasing-order basis), extended
    antisymmetrically; squared entries over i < j sum to one for a
    normalized state.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        if np.max(np.abs(mat + mat.T)) > 1e-12:
            raise InvariantBreachError("pair-coefficient matrix must be antisymmetric")
        total = float(np.sum(np.abs(mat) ** 2)) / 2.0
        if abs(total - 1.0) > 1e-10:
            raise InvariantBreachError("pair coefficients must carry unit norm")

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SlaterDecomposition:
    """Normal form of a two-particle state as elementary pair excitations.

    ``mode_unitary @ C @ mode_unitary.T`` is block diagonal with 2 x 2
    antisymmetric blocks carrying the coefficients ``z`` (descending,
    nonnegative, squares summing to one).  Row 2k-1 and row 2k of
    ``mode_unitary`` define the dressed pair of modes for z_k: the state
    equals ``sum_k z_k g+_{2k-1} g+_{2k} |vac>`` with
    ``g+_r = sum_i conj(mode_unitary[r-1, i-1]) a+_i``.
    """

    mode_unitary: np.ndarray
    z: np.ndarray
    rank: int


def two_particle_coefficients(state: AnyonState) -> TwoParticleCoefficients:
    """Extract the antisymmetric pair matrix from a two-particle state."""
    n = _definite_particle_number(state)
    if n != 2:
        raise PreconditionError(f"pair coefficients require exactly two particles, got {n}")
    psi = fermionize(state).normalized()
    mat = np.zeros((state.m, state.m), dtype=complex)
    for occ, amp in psi.amplitudes.items():
        i = (occ & -occ).bit_length()  # lowest occupied mode
        j = occ.bit_length()  # highest occupied mode
        mat[i - 1, j - 1] = amp
        mat[j - 1, i - 1] = -amp
    return TwoParticleCoefficients(mat)


def _pair_block_rows(c: np.ndarray, lam_floor: float = 1e-13) -> tuple[np.ndarray, np.ndarray]:
    """Rows of a unitary bringing an antisymmetric matrix to 2x2-block form.

    Works inside each eigenvalue cluster of C+C: for a unit eigenvector u
    with eigenvalue z^2 the partner C+ conj(u) / z is orthogonal to u, lies
    in the same cluster, and satisfies u^T C partner = z exactly.
    Eigenvalues at or below ``lam_floor`` are treated as kernel noise.
    """
    m = c.shape[0]
    h = c.conj().T @ c
    evals, evecs = np.linalg.eigh(h)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    rows: list[np.ndarray] = []
    zs: list[float] = []
    idx = 0
    while idx < m:
        lam = evals[idx]
        if lam <= lam_floor:
            break
        hi = idx
        while hi + 1 < m and abs(evals[hi + 1] - lam) <= 1e-9 * max(1.0, lam):
            hi += 1
        cluster = evecs[:, idx : hi + 1].copy()
        while cluster.shape[1] > 0:
            # deterministic tie-break inside degenerate clusters: seed the
            # pair with the earliest coordinate axis the cluster touches
            coord_weight = np.sum(np.abs(cluster) ** 2, axis=1)
            k = int(np.nonzero(coord_weight > 1e-9)[0][0])
            u = cluster @ cluster[k].conj()
            u = u / np.linalg.norm(u)
            w = c.conj().T @ u.conj()
            nr = np.linalg.norm(w)
            if nr * nr < 0.25 * lam:
                raise InvariantBreachError("pairing partner collapsed; antisymmetric structure violated")
            w = w / nr
            w = w - (u.conj() @ w) * u
            nw = np.linalg.norm(w)
            if nw < 0.5:
                raise InvariantBreachError("pairing partner collapsed; antisymmetric structure violated")
            w = w / nw
            rows.extend([u, w])
            zs.append(abs(complex(u @ c @ w)))
            if cluster.shape[1] > 2:
                rest = cluster - np.outer(u, u.conj() @ cluster) - np.outer(w, w.conj() @ cluster)
                left, sing, _ = np.linalg.svd(rest, full_matrices=False)
                keep = sing > 0.5
                if int(keep.sum()) != cluster.shape[1] - 2:
                    raise InvariantBreachError("cluster deflation lost orthogonal directions")
                cluster = left[:, keep]
            else:
                cluster = cluster[:, :0]
        idx = hi + 1
    if idx < m:
        rows.extend(_axis_aligned_basis(evecs[:, idx:]))
    u_mat = np.array(rows)
    return u_mat, np.array(zs)


def _axis_aligned_basis(space: np.ndarray) -> list[np.ndarray]:
    """Deterministic orthonormal basis of a column span, seeded by coordinate axes."""
    vecs: list[np.ndarray] = []
    space = space.copy()
    while space.shape[1] > 0:
        coord_weight = np.sum(np.abs(space) ** 2, axis=1)
        k = int(np.nonzero(coord_weight > 1e-9)[0][0])
        v = space @ space[k].conj()
        v = v / np.linalg.norm(v)
        vecs.append(v)
        if space.shape[1] == 1:
            break
        rest = space - np.outer(v, v.conj() @ space)
        left, sing, _ = np.linalg.svd(rest, full_matrices=False)
        space = left[:, sing > 0.5]
    return vecs


def slater_decompose(state: AnyonState, rank_tol: float = 1e-8) -> SlaterDecomposition:
    """Pair normal form of a two-particle state.

    The coefficients equal those of the fermionic-sector counterpart with
    the same amplitude table, so they are independent of the statistics
    tag.  The returned coefficients are read off the transformed matrix,
    not from the eigenvalue oracle, so the two routes stay independent.
    """
    coeffs = two_particle_coefficients(state)
    c = coeffs.matrix
    u_mat, z_probe = _pair_block_rows(c)
    z_form = u_mat @ c @ u_mat.T
    n_pairs = len(z_probe)
    z = np.array([z_form[2 * k, 2 * k + 1].real for k in range(n_pairs)])
    check = z_form.copy()
    for k in range(n_pairs):
        check[2 * k, 2 * k + 1] -= z[k]
        check[2 * k + 1, 2 * k] += z[k]
    if np.max(np.abs(check)) > 1e-8 or (len(z) > 0 and np.min(z) < -1e-12):
        raise InvariantBreachError("block-diagonalization of the pair matrix failed")
    order = np.argsort(z)[::-1]
    perm: list[int] = []
    for k in order:
        perm.extend([2 * k, 2 * k + 1])
    perm.extend(range(2 * n_pairs, state.m))
    u_mat = u_mat[perm]
    z = np.clip(z[order], 0.0, None)
    rank = int(np.sum(z > rank_tol))
    return SlaterDecomposition(u_mat, z, rank)


def reconstruct_from_slater(dec: SlaterDecomposition, m: int) -> AnyonState:
    """Rebuild sum_k z_k g+_{2k-1} g+_{2k} |vac> in the fermionic sector."""
    from .optics import _rotated_create

    total: dict[int, complex] = {}
    rot = dec.mode_unitary.conj()
    for k, zk in enumerate(dec.z):
        if zk <= 0.0:
            continue
        table = {0: complex(zk)}
        table = _rotated_create(table, m, rot[2 * k + 1])
        table = _rotated_create(table, m, rot[2 * k])
        for occ, amp in table.items():
            total[occ] = total.get(occ, 0.0) + amp
    return AnyonState(m, 0.0, total)


@dataclass(frozen=True)
class SeparabilityReport:
    """Verdict plus the witness mode basis that diagonalizes the one-body matrix."""

    separable: bool
    occupations: np.ndarray
    mode_basis: np.ndarray
    e_sp: float
    slater_rank: int | None


def is_separable(state: AnyonState, tol: float = 1e-8) -> SeparabilityReport:
    """Decide whether a definite-N state is a dressed Fock configuration.

    True iff every occupation eigenvalue of the minimal-entropy mode
    representation sits within ``tol`` of 0 or 1.  For two particles the
    verdict is cross-checked against the pair normal form (a single
    coefficient iff separable); disagreement raises, since the two
    criteria are equivalent.
    """
    modes = minimal_entropy_modes(state)
    sep = bool(np.all(np.abs(modes.occupations - np.round(modes.occupations)) <= tol))
    rank: int | None = None
    if state.particle_number() == 2:
        dec = slater_decompose(state, rank_tol=float(np.sqrt(tol)))
        rank = int(np.sum(dec.z > 1e-8))
        if (dec.rank == 1) != sep:
            raise InvariantBreachError(
                f"pair normal form (rank {dec.rank}) disagrees with mode occupations {modes.occupations}"
            )
    return SeparabilityReport(sep, modes.occupations, modes.mode_basis, modes.e_sp, rank)
