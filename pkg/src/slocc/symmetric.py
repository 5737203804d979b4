"""4x4 r-matrix representation of Pauli-symmetric four-qubit operators.

A four-qubit operator invariant under U x U x V x V (U, V in the Pauli group)
is a combination sum_ij M[i,j] Pi_i (x) Pi_j of tensored Bell projectors; the
4x4 real matrix M is its compact representation.

Two qubit orderings for the assembled 16x16 matrix:

    PAPER ordering:  qubits A', B', A'', B''  (big-endian binary indexing);
                     the first Bell projector acts on the A'B' pair.
    CUT ordering:    qubits A', A'', B', B''  -- groups the two parties, so
                     the separability cut A|B is the 4x4 (x) 4x4 split.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .bell import BELL_PROJECTORS, PAULI_I, PAULI_X, PAULI_Z
from .numerics import NonHermitianError, NumericsError, is_hermitian, kron


class QubitOrdering(Enum):
    PAPER = "paper"   # A' B' A'' B''
    CUT = "cut"       # A' A'' B' B''


class UnsupportedPairError(NumericsError):
    pass


def _qubit_permutation_matrix(source_of):
    """Permutation on C^16 sending qubit source_of[k] to slot k (big-endian)."""
    n = len(source_of)
    dim = 2 ** n
    P = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n - 1 - k)) & 1 for k in range(n)]
        new = sum(bits[source_of[k]] << (n - 1 - k) for k in range(n))
        P[new, idx] = 1.0
    return P


# PAPER (A',B',A'',B'') -> CUT (A',A'',B',B'')
PAPER_TO_CUT = _qubit_permutation_matrix([0, 2, 1, 3])
PAPER_TO_CUT.setflags(write=False)

_TENSORED_PROJECTORS = tuple(
    tuple(np.kron(BELL_PROJECTORS[i], BELL_PROJECTORS[j]) for j in range(4))
    for i in range(4))


def reorder(rho, src: QubitOrdering, dst: QubitOrdering):
    """Conjugate a 16x16 matrix by the qubit-reordering permutation."""
    if src == dst:
        return np.asarray(rho, dtype=complex)
    if src == QubitOrdering.PAPER:
        return PAPER_TO_CUT @ rho @ PAPER_TO_CUT.T
    return PAPER_TO_CUT.T @ rho @ PAPER_TO_CUT


def assemble(M, ordering=QubitOrdering.PAPER):
    """16x16 matrix sum_ij M[i,j] Pi_i (x) Pi_j in the requested ordering."""
    M = np.asarray(M, dtype=float)
    out = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        for j in range(4):
            if M[i, j] != 0.0:
                out += M[i, j] * _TENSORED_PROJECTORS[i][j]
    return reorder(out, QubitOrdering.PAPER, ordering)


def project_to_commutant(rho, ordering=QubitOrdering.PAPER):
    """r[i,j] = tr[rho (Pi_i x Pi_j)]; the twirl onto the symmetric commutant.

    Accepts any Hermitian 16x16 input; non-symmetric matrices are projected
    without warning.
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_hermitian(rho):
        raise NonHermitianError("input to project_to_commutant not Hermitian")
    rho = reorder(rho, ordering, QubitOrdering.PAPER)
    r = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            r[i, j] = np.real(np.trace(rho @ _TENSORED_PROJECTORS[i][j]))
    return r


def permute(r, row_perm, col_perm):
    """r'[i,j] = r[row_perm[i], col_perm[j]]; the local-unitary action on r."""
    r = np.asarray(r)
    return r[np.ix_(list(row_perm), list(col_perm))]


# Bell-swap unitaries: product operators (one factor per qubit of a Bell
# pair) whose conjugation transposes two adjacent Bell projectors while
# fixing the other two.  Verified numerically in the test suite; note these
# differ from a published listing whose first and third entries are
# interchanged.
_H = (PAULI_X + PAULI_Z) / np.sqrt(2.0)
_SWAP_FACTORS = {
    (0, 1): ((PAULI_I + 1j * PAULI_Z) / np.sqrt(2.0),
             (PAULI_I + 1j * PAULI_Z) / np.sqrt(2.0)),
    (1, 2): (_H, _H),
    (2, 3): ((PAULI_I - 1j * PAULI_Z) / np.sqrt(2.0),
             (PAULI_I + 1j * PAULI_Z) / np.sqrt(2.0)),
}


def swap_factors(i, j):
    """Single-qubit factors (vA, vB) with kron(vA, vB) swapping Pi_i, Pi_j.

    Only adjacent pairs (0,1), (1,2), (2,3) are primitive; compose for the
    rest (see bell_permutation_factors).
    """
    key = (min(i, j), max(i, j))
    if key not in _SWAP_FACTORS:
        raise UnsupportedPairError(
            f"no primitive swap for Bell pair {key}; compose adjacent swaps")
    return _SWAP_FACTORS[key]


def swap_unitary(i, j):
    """4x4 product unitary whose conjugation transposes Bell projectors i, j."""
    vA, vB = swap_factors(i, j)
    return kron(vA, vB)


def _build_permutation_table():
    """BFS over S4 generated by the adjacent swaps, accumulating factors.

    Composing a swap unitary on the left post-composes the realized index
    map: if conjugation by U realizes c, conjugation by V_(k,k+1) U realizes
    the transposition (k k+1) applied after c.
    """
    identity = (0, 1, 2, 3)
    table = {identity: (np.eye(2, dtype=complex), np.eye(2, dtype=complex))}
    frontier = [identity]
    while frontier:
        nxt = []
        for cur in frontier:
            uA, uB = table[cur]
            for k in range(3):
                swap = {k: k + 1, k + 1: k}
                new = tuple(swap.get(c, c) for c in cur)
                if new not in table:
                    vA, vB = _SWAP_FACTORS[(k, k + 1)]
                    table[new] = (vA @ uA, vB @ uB)
                    nxt.append(new)
        frontier = nxt
    return table


_PERMUTATION_FACTORS = _build_permutation_table()


def bell_permutation_factors(perm):
    """Factors (uA, uB) with conjugation by kron(uA, uB) sending Pi_k -> Pi_perm[k].

    Any 4-permutation, built by composing adjacent Bell swaps.
    """
    key = tuple(int(p) for p in perm)
    if key not in _PERMUTATION_FACTORS:
        raise UnsupportedPairError(f"{perm} is not a 4-permutation")
    return _PERMUTATION_FACTORS[key]


def bell_permutation_unitary(perm):
    uA, uB = bell_permutation_factors(perm)
    return kron(uA, uB)
