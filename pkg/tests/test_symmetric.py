import itertools

import numpy as np
import pytest

from slocc.bell import BELL_PROJECTORS
from slocc.numerics import NonHermitianError
from slocc.symmetric import (PAPER_TO_CUT, QubitOrdering, UnsupportedPairError,
                             assemble, bell_permutation_factors,
                             bell_permutation_unitary, permute,
                             project_to_commutant, reorder, swap_factors,
                             swap_unitary)


def test_reorder_round_trip():
    rng = np.random.default_rng(21)
    rho = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    back = reorder(reorder(rho, QubitOrdering.PAPER, QubitOrdering.CUT),
                   QubitOrdering.CUT, QubitOrdering.PAPER)
    assert np.abs(back - rho).max() == 0
    assert np.abs(PAPER_TO_CUT @ PAPER_TO_CUT.T - np.eye(16)).max() == 0


def test_reorder_moves_qubits():
    # basis state |0110> (A'=0, B'=1, A''=1, B''=0) becomes |0110> in CUT
    # ordering read as (A'=0, A''=1, B'=1, B''=0)
    ket = np.zeros(16)
    ket[0b0110] = 1.0
    rho = np.outer(ket, ket)
    moved = reorder(rho, QubitOrdering.PAPER, QubitOrdering.CUT)
    idx = np.argmax(np.diag(moved).real)
    assert idx == 0b0110  # A'=0, A''=1, B'=1, B''=0


def test_assemble_project_round_trip():
    rng = np.random.default_rng(22)
    for ordering in QubitOrdering:
        M = rng.dirichlet(np.ones(16)).reshape(4, 4)
        r = project_to_commutant(assemble(M, ordering), ordering)
        assert np.abs(r - M).max() < 1e-12


def test_project_requires_hermitian():
    bad = np.zeros((16, 16))
    bad[0, 1] = 1.0
    with pytest.raises(NonHermitianError):
        project_to_commutant(bad)


def test_projection_is_a_twirl():
    # projecting a non-symmetric state keeps its symmetric component
    rng = np.random.default_rng(23)
    A = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    rho = A @ A.conj().T
    rho /= np.trace(rho).real
    r = project_to_commutant(rho)
    again = project_to_commutant(assemble(r))
    assert np.abs(again - r).max() < 1e-12


def test_permute_indexing():
    r = np.arange(16.0).reshape(4, 4)
    out = permute(r, (1, 0, 2, 3), (0, 1, 3, 2))
    assert out[0, 0] == r[1, 0] and out[0, 2] == r[1, 3]


def _bell_action(U):
    """Permutation realized by conjugation with the 4x4 unitary U."""
    perm = []
    for P in BELL_PROJECTORS:
        img = U @ P @ U.conj().T
        hits = [j for j, Q in enumerate(BELL_PROJECTORS)
                if np.abs(img - Q).max() < 1e-12]
        assert len(hits) == 1
        perm.append(hits[0])
    return tuple(perm)


def test_adjacent_swaps_transpose_projectors():
    for (i, j) in ((0, 1), (1, 2), (2, 3)):
        U = swap_unitary(i, j)
        assert np.abs(U @ U.conj().T - np.eye(4)).max() < 1e-12
        expected = [0, 1, 2, 3]
        expected[i], expected[j] = expected[j], expected[i]
        assert _bell_action(U) == tuple(expected)


def test_swap_factors_only_adjacent():
    with pytest.raises(UnsupportedPairError):
        swap_factors(0, 2)
    vA, vB = swap_factors(1, 0)  # order-insensitive
    assert np.abs(np.kron(vA, vB) - swap_unitary(0, 1)).max() == 0


def test_all_permutations_realized():
    for perm in itertools.permutations(range(4)):
        U = bell_permutation_unitary(perm)
        assert _bell_action(U) == perm
        uA, uB = bell_permutation_factors(perm)
        assert np.abs(np.kron(uA, uB) - U).max() == 0


def test_bad_permutation_rejected():
    with pytest.raises(UnsupportedPairError):
        bell_permutation_factors((0, 0, 1, 2))
