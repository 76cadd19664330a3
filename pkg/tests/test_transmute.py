import numpy as np
import pytest

from anyonsim import (
    AnyonState,
    TransmutationMap,
    annihilation,
    anyonize,
    apply_operator_expr,
    basis_state,
    bs,
    creation,
    fermionize,
    hopping,
    number,
    run_circuit,
    transmute_operator,
    transmute_state,
)
from anyonsim.presets import split_pair, split_pair_circuit
from conftest import random_state, table_diff

PHI_GRID = tuple(np.linspace(0.0, 2 * np.pi, 7, endpoint=False))


def _actions_equal(expr_a, expr_b, m, phi, atol=1e-12):
    for occ in range(1 << m):
        ket = basis_state(occ, phi, m)
        if table_diff(apply_operator_expr(ket, expr_a), apply_operator_expr(ket, expr_b)) > atol:
            return False
    return True


def test_number_operator_invariant():
    m = 4
    for phi1 in PHI_GRID[::2]:
        for phi2 in PHI_GRID[1::2]:
            tmap = TransmutationMap(phi1, phi2)
            for i in range(1, m + 1):
                assert _actions_equal(transmute_operator(number(m, i), tmap), number(m, i), m, phi2)


def test_nearest_neighbour_hopping_invariant():
    m = 4
    for i in range(1, m):
        hop = hopping(m, i, i + 1)
        for phi in PHI_GRID:
            img = transmute_operator(hop, TransmutationMap(0.0, phi))
            assert _actions_equal(img, hop, m, phi)


def test_distant_hopping_not_invariant():
    hop = hopping(4, 1, 3)
    img = transmute_operator(hop, TransmutationMap(0.0, 1.0))
    assert not _actions_equal(img, hop, 4, 1.0)


def test_composition_law_on_example():
    # two successive maps equal the direct map, as actions on all basis states
    m = 4
    expr = creation(m, 3) * annihilation(m, 1)
    for phi1, phi2, phi3 in [(0.3, 1.7, 5.0), (0.0, np.pi, 2.0), (4.0, 0.5, 0.5)]:
        two_step = transmute_operator(transmute_operator(expr, TransmutationMap(phi1, phi2)), TransmutationMap(phi2, phi3))
        direct = transmute_operator(expr, TransmutationMap(phi1, phi3))
        assert _actions_equal(two_step, direct, m, phi3)


def test_inverse_law(rng):
    m = 4
    expr = creation(m, 4) * annihilation(m, 2) + number(m, 1).scaled(0.7j)
    for phi1, phi2 in [(0.0, 2.2), (1.0, np.pi), (5.5, 0.4)]:
        tmap = TransmutationMap(phi1, phi2)
        round_trip = transmute_operator(transmute_operator(expr, tmap), tmap.inverse())
        assert _actions_equal(round_trip, expr, m, phi1)


def test_star_compatibility(rng):
    m = 4
    expr = creation(m, 3) * annihilation(m, 1) + hopping(m, 2, 4).scaled(0.3 - 0.2j)
    tmap = TransmutationMap(0.7, 3.1)
    lhs = transmute_operator(expr.adjoint(), tmap)
    rhs = transmute_operator(expr, tmap).adjoint()
    assert _actions_equal(lhs, rhs, m, 3.1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_canonical_relations_transported(m):
    # images of the phi1 generators obey the phi1 exchange relations inside phi2
    eps = lambda i, j: 0 if i == j else (1 if i < j else -1)
    for phi1 in (0.0, 1.1, np.pi):
        for phi2 in (0.5, 2.8):
            tmap = TransmutationMap(phi1, phi2)
            a = [None] + [transmute_operator(annihilation(m, i), tmap) for i in range(1, m + 1)]
            adag = [None] + [transmute_operator(creation(m, i), tmap) for i in range(1, m + 1)]
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    lhs = a[i] * adag[j] + (adag[j] * a[i]).scaled(complex(np.exp(-1j * phi1 * eps(i, j))))
                    for occ in range(1 << m):
                        ket = basis_state(occ, phi2, m)
                        out = apply_operator_expr(ket, lhs)
                        ref = ket if i == j else AnyonState(m, phi2, {})
                        assert table_diff(out, ref) < 1e-12
                    lhs2 = a[i] * a[j] + (a[j] * a[i]).scaled(complex(np.exp(1j * phi1 * eps(i, j))))
                    for occ in range(1 << m):
                        ket = basis_state(occ, phi2, m)
                        assert table_diff(apply_operator_expr(ket, lhs2), AnyonState(m, phi2, {})) < 1e-12


def test_transmute_state_is_amplitude_identity(rng):
    psi = random_state(rng, 4, 2.0)
    out = transmute_state(psi, 0.0)
    assert out.phi == 0.0
    assert table_diff(out, psi) == 0.0
    assert abs(fermionize(psi).norm() - psi.norm()) < 1e-15


def test_fermionize_basis_state():
    st = basis_state("1010", 2.5)
    assert table_diff(fermionize(st), basis_state("1010", 0.0)) == 0.0


def test_round_trip_anyonize_fermionize(rng):
    psi = random_state(rng, 5, 4.0)
    assert table_diff(anyonize(fermionize(psi), 4.0), psi) == 0.0


def test_matrix_elements_reproduced(rng):
    # the image operator on the retagged state reproduces the original matrix elements
    for _ in range(20):
        m = int(rng.integers(2, 6))
        phi = float(rng.uniform(0.0, 2 * np.pi))
        expr = creation(m, int(rng.integers(1, m + 1))) * annihilation(m, int(rng.integers(1, m + 1)))
        img = transmute_operator(expr, TransmutationMap(0.0, phi))
        for occ in range(1 << m):
            out0 = apply_operator_expr(basis_state(occ, 0.0, m), expr)
            outphi = apply_operator_expr(basis_state(occ, phi, m), img)
            assert table_diff(out0, outphi) < 1e-12


def test_worked_example_fermionizes_to_plain_coefficients():
    theta = 0.77
    for phi in PHI_GRID:
        out = run_circuit(split_pair(phi), split_pair_circuit(theta, phi))
        ferm = fermionize(out)
        assert abs(ferm.amplitude("1100") - 1 / np.sqrt(2)) < 1e-12
        assert abs(ferm.amplitude("1001") - np.cos(theta) / np.sqrt(2)) < 1e-12
        assert abs(ferm.amplitude("0101") - 1j * np.sin(theta) / np.sqrt(2)) < 1e-12
