"""Channel-state duality for Bell-diagonal-preserving separable maps.

A separable completely positive map acts as rho -> sum_i (A_i x B_i) rho
(A_i x B_i)^dag with 2x2 Kraus factors per party.  Its dual state lives on
four qubits grouped as (A_out, A_in, B_out, B_in) = (A', A'', B', B''), i.e.
CUT ordering, and the map is separable iff that state is separable across
the A|B cut.  The module also houses the rank-deficient rho_ND family and
the explicit two-term separable map that reverses its quasi-distillation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import PAULIS, validate_weights
from .numerics import NumericsError, kron, partial_trace
from .symmetric import (QubitOrdering, bell_permutation_factors,
                        project_to_commutant, reorder)


class AnnihilatedError(NumericsError):
    """The map sends the input state to zero."""


class NotAVertexError(NumericsError):
    pass


class BOutOfRangeError(NumericsError):
    pass


@dataclass
class SeparableMap:
    """Kraus pairs (A_i, B_i) with the combined operator A_i (x) B_i.

    `scale` records the positive factor removed by normalization:
    raw Kraus = sqrt(scale) * stored Kraus.  After normalize() the largest
    eigenvalue of sum (A x B)^dag (A x B) is 1, so tr of the unnormalized
    output is the maximal admissible success probability.
    """

    kraus: list
    scale: float = 1.0

    def combined(self):
        return [kron(A, B) for A, B in self.kraus]

    def normalize(self):
        S = sum(K.conj().T @ K for K in self.combined())
        s = float(np.linalg.eigvalsh(S).max())
        if s <= 0:
            raise AnnihilatedError("map has no Kraus content")
        f = s ** 0.25
        return SeparableMap(kraus=[(A / f, B / f) for A, B in self.kraus],
                            scale=self.scale * s)


def apply_map_density(sep_map, rho, annihilation_tol=1e-14):
    """(normalized output, success weight tr sigma) of the Kraus action."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.zeros_like(rho)
    for K in sep_map.combined():
        sigma += K @ rho @ K.conj().T
    weight = float(np.real(np.trace(sigma)))
    if weight < annihilation_tol:
        raise AnnihilatedError("map annihilates the input state")
    return sigma / weight, weight


def map_action_bd(r, lam):
    """Bell-diagonal action of the map with r-matrix r: lam' prop r @ lam.

    Returns (normalized output weights, success weight = ||r lam||_1).
    """
    r = np.asarray(r, dtype=float)
    lam = validate_weights(lam)
    v = r @ lam
    weight = float(v.sum())
    if weight < 1e-14:
        raise AnnihilatedError("r-matrix annihilates these weights")
    return v / weight, weight


_PHI_PLUS = np.zeros(4, dtype=complex)
_PHI_PLUS[0] = 1.0
_PHI_PLUS[3] = 1.0  # unnormalized sum_i |ii>


def cj_state(sep_map):
    """16x16 dual state in CUT ordering (A' A'' B' B''), unnormalized.

    Each party's factor acts on (out, in) = (primed, double-primed); the
    state is manifestly separable across the A|B cut for any Kraus list.
    """
    phi = np.outer(_PHI_PLUS, _PHI_PLUS.conj())
    out = np.zeros((16, 16), dtype=complex)
    for A, B in sep_map.kraus:
        KA = kron(A, np.eye(2))
        KB = kron(B, np.eye(2))
        out += np.kron(KA @ phi @ KA.conj().T, KB @ phi @ KB.conj().T)
    return out


def cj_rmatrix(sep_map, normalize=True):
    """Commutant projection of the dual state; normalized to unit mass."""
    r = project_to_commutant(cj_state(sep_map), QubitOrdering.CUT)
    if normalize:
        total = r.sum()
        if total < 1e-14:
            raise AnnihilatedError("dual state has zero symmetric component")
        r = r / total
    return r


def channel_from_cj(rho_dual, rho_in, ordering=QubitOrdering.CUT):
    """Recover the map action from its dual state (unnormalized output).

    E(rho) = tr_in[rho_dual (I_out (x) rho^T)], transposition in the
    standard product basis of the input pair (A'', B'').
    """
    rho_dual = reorder(np.asarray(rho_dual, dtype=complex), ordering,
                       QubitOrdering.PAPER)
    rho_in = np.asarray(rho_in, dtype=complex)
    # PAPER ordering A' B' A'' B'': the input pair is the trailing factor.
    op = np.kron(np.eye(4, dtype=complex), rho_in.T)
    return partial_trace(rho_dual @ op, (2, 2, 2, 2), keep=(0, 1))


def _vertex_structure(v, tol=1e-12):
    """Classify a polytope vertex: ('D', perm) or ('G', rows, cols)."""
    v = np.asarray(v, dtype=float)
    pattern = np.isclose(v, 0.25, atol=tol)
    if not np.all(np.isclose(v, 0.0, atol=tol) | pattern):
        raise NotAVertexError("entries are not all in {0, 1/4}")
    if pattern.sum() == 4 and np.all(pattern.sum(axis=0) == 1) \
            and np.all(pattern.sum(axis=1) == 1):
        perm = tuple(int(np.argmax(pattern[:, j])) for j in range(4))
        return "D", perm
    rows = tuple(int(i) for i in range(4) if pattern[i].any())
    cols = tuple(int(j) for j in range(4) if pattern[:, j].any())
    if pattern.sum() == 4 and len(rows) == 2 and len(cols) == 2 \
            and pattern[np.ix_(rows, cols)].all():
        return "G", rows, cols
    raise NotAVertexError("not a D-type or G-type vertex pattern")


def _perm_sending(pairs):
    """Any 4-permutation with the given (src, dst) assignments."""
    perm = [None] * 4
    used = set()
    for src, dst in pairs:
        perm[src] = dst
        used.add(dst)
    rest = iter(d for d in range(4) if d not in used)
    for k in range(4):
        if perm[k] is None:
            perm[k] = next(rest)
    return tuple(perm)


def kraus_for_vertex(v):
    """Explicit product-Kraus realization of a polytope vertex map.

    D-type vertices are Bell-correlated Pauli dephasing composed with a Bell
    permutation unitary; G-type vertices measure a two-Bell-state block and
    prepare the even mixture of another block.  The returned map is
    normalized and its dual projects back onto v.
    """
    structure = _vertex_structure(v)
    if structure[0] == "D":
        # v[i,j] = 1/4 iff i = p(j): the map moves weight from Bell j to p(j)
        _, p = structure
        uA, uB = bell_permutation_factors(p)
        pairs = [(uA @ (sigma / np.sqrt(2.0)), uB @ (sigma / np.sqrt(2.0)))
                 for sigma in PAULIS]
        return SeparableMap(kraus=pairs).normalize()
    _, rows, cols = structure
    # canonical block map: measure span{Phi_1, Phi_2}, prepare their mixture
    e = np.eye(2, dtype=complex)
    base = [(np.outer(e[a], e[b]) / 2 ** 0.25,
             np.outer(e[a], e[b]) / 2 ** 0.25)
            for a in range(2) for b in range(2)]
    out_perm = _perm_sending([(0, rows[0]), (1, rows[1])])
    in_perm = _perm_sending([(cols[0], 0), (cols[1], 1)])
    uA, uB = bell_permutation_factors(out_perm)
    vA, vB = bell_permutation_factors(in_perm)
    pairs = [(uA @ A @ vA, uB @ B @ vB) for A, B in base]
    return SeparableMap(kraus=pairs).normalize()


# --- the rho_ND family and quasi-distillation ------------------------------

def _check_b(b):
    if not 0.0 <= b <= 0.5:
        raise BOutOfRangeError(f"b = {b} outside [0, 1/2]")
    return float(b)


def rho_nd(b):
    """Rank-deficient non-Bell-diagonal normal form, standard product basis."""
    b = _check_b(b)
    return np.array([[2, 0, 0, 0],
                     [0, 1, 2 * b, 0],
                     [0, 2 * b, 1, 0],
                     [0, 0, 0, 0]], dtype=complex) / 4.0


def rho_nd_prime(b):
    """Quasi-distillation target of rho_nd(b): Bell-diagonal, weights
    (1+2b)/2 on Phi_4 and (1-2b)/2 on Phi_3."""
    b = _check_b(b)
    return np.array([[0, 0, 0, 0],
                     [0, 1, -2 * b, 0],
                     [0, -2 * b, 1, 0],
                     [0, 0, 0, 0]], dtype=complex) / 2.0


def quasi_reverse_map(b):
    """Two-term separable map sending rho_nd_prime(b) back to rho_nd(b).

    The direction (prime -> plain) is verified numerically in the test
    suite.  Kraus pairs are returned normalized; `scale` recovers the raw
    operators.
    """
    b = _check_b(b)
    root = np.sqrt(1 + 4 * b * b)
    A1 = np.array([[-2 * b + root, -0.5], [1, 0]], dtype=complex)
    B1 = np.array([[1, 0.5], [1, 0]], dtype=complex)
    A2 = np.array([[2 * b - root, 0.5], [1, 0]], dtype=complex)
    B2 = np.array([[1, 0.5], [-1, 0]], dtype=complex)
    return SeparableMap(kraus=[(A1, B1), (A2, B2)]).normalize()
