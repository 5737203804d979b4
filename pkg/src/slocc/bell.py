"""Bell basis, Bell-diagonal states and the correlation-coordinate picture.

The Bell index convention is frozen here and imported everywhere else:

    Phi_1, Phi_2 = (|00> +- |11>)/sqrt(2)       (indices 0, 1 in code)
    Phi_3, Phi_4 = (|01> +- |10>)/sqrt(2)       (indices 2, 3 in code)

Correlation coordinates are (x, y, z) = (-<sx sx>, -<sy sy>, -<sz sz>); the
four Bell states sit at (-1,1,-1), (1,-1,-1), (-1,-1,1), (1,1,1).
"""

from __future__ import annotations

import numpy as np

from .numerics import TOL, NumericsError

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)

_s2 = np.sqrt(2.0)
# Rows are the four Bell vectors in the product basis |00>,|01>,|10>,|11>.
BELL_VECTORS = np.array([
    [1 / _s2, 0, 0, 1 / _s2],
    [1 / _s2, 0, 0, -1 / _s2],
    [0, 1 / _s2, 1 / _s2, 0],
    [0, 1 / _s2, -1 / _s2, 0],
], dtype=complex)

BELL_PROJECTORS = tuple(np.outer(v, v.conj()) for v in BELL_VECTORS)

# Coordinates of the four Bell states in (x, y, z); columns of the linear
# weights -> coords map.
BELL_COORDS = np.array([
    [-1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [1.0, 1.0, 1.0],
])

for _p in BELL_PROJECTORS:
    _p.setflags(write=False)
BELL_VECTORS.setflags(write=False)
BELL_COORDS.setflags(write=False)


class InvalidWeightsError(NumericsError):
    pass


class NotBellDiagonalError(NumericsError):
    pass


class OutOfTetrahedronError(NumericsError):
    pass


def validate_weights(lam, tol_neg=1e-12, tol_sum=TOL.equality):
    """Return `lam` as a float array after checking the probability invariants."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4,):
        raise InvalidWeightsError("weight vector must have 4 components")
    if lam.min() < -tol_neg:
        raise InvalidWeightsError(f"negative weight {lam.min()}")
    if abs(lam.sum() - 1.0) > tol_sum:
        raise InvalidWeightsError(f"weights sum to {lam.sum()}, expected 1")
    return lam


def weights_to_density(lam):
    """Bell-diagonal density matrix sum_i lam_i |Phi_i><Phi_i|."""
    lam = validate_weights(lam)
    rho = np.zeros((4, 4), dtype=complex)
    for li, proj in zip(lam, BELL_PROJECTORS):
        rho += li * proj
    return rho


def density_to_weights(rho, offdiag_tol=TOL.equality):
    """Bell weights of a Bell-diagonal density matrix.

    Raises NotBellDiagonalError if any off-diagonal Bell-basis element
    exceeds `offdiag_tol`.
    """
    rho = np.asarray(rho, dtype=complex)
    U = BELL_VECTORS.T  # columns are Bell vectors
    in_bell = U.conj().T @ rho @ U
    off = in_bell - np.diag(np.diag(in_bell))
    if np.abs(off).max() > offdiag_tol:
        raise NotBellDiagonalError(
            f"off-diagonal Bell element {np.abs(off).max():.3e}")
    return np.real(np.diag(in_bell))


def weights_to_coords(lam):
    """Linear map to (-<sx sx>, -<sy sy>, -<sz sz>)."""
    lam = validate_weights(lam)
    return BELL_COORDS.T @ lam


def coords_to_weights(xyz, tol=1e-9):
    """Inverse of weights_to_coords; point must lie in the state tetrahedron."""
    xyz = np.asarray(xyz, dtype=float)
    A = np.vstack([BELL_COORDS.T, np.ones(4)])
    b = np.concatenate([xyz, [1.0]])
    lam, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.abs(A @ lam - b).max() > tol or lam.min() < -tol:
        raise OutOfTetrahedronError(f"point {xyz} outside the Bell tetrahedron")
    return lam


def canonical_order(lam):
    """Sort weights descending; returns (ordered, perm) with ordered[k] = lam[perm[k]].

    Ties break stably: the lowest original index comes first, so an
    already-ordered input gets the identity permutation.
    """
    lam = validate_weights(lam)
    perm = np.argsort(-lam, kind="stable")
    return lam[perm], tuple(int(p) for p in perm)


def is_ordered(lam, tol=1e-12):
    lam = np.asarray(lam, dtype=float)
    return bool(np.all(np.diff(lam) <= tol))


def is_entangled_bd(lam):
    """Entanglement of a Bell-diagonal state: max weight beyond 1/2.

    Boundary states (max weight exactly 1/2) count as separable; the
    separable octahedron is closed.
    """
    lam = validate_weights(lam)
    return bool(lam.max() > 0.5 + 1e-12)
