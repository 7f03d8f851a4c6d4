"""Dense Fock-space oracle.

Builds creation/annihilation operators, exponential elements, quasi-free
density matrices and the split isomorphism explicitly, at exponential cost,
so that every symbol-level formula in the package can be checked against
brute force at small mode number.

Conventions
-----------
The 2^d-dimensional Fock space over d modes is coordinatized by the
graded-lexicographic subset basis: subsets of {0, ..., d-1} sorted first by
size, then lexicographically.  Index 0 is the vacuum, index 2^d - 1 the
completely filled state.  The basis vector of a subset is the wedge of the
standard one-particle vectors in *ascending* mode order; every sign below
follows from that choice.

Operators are plain (2^d, 2^d) complex ndarrays over this basis.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import (
    DimensionCap,
    DimensionMismatch,
    NotEvenState,
    NotOrthonormal,
    ZeroVector,
)
from .symbols import Symbol

#: absolute ceiling on the one-particle dimension of any dense construction
HARD_ORACLE_CAP = 14

#: numerical kernel threshold for elementary-vector detection
ELEMENTARY_KERNEL_TOL = 1e-9

EVEN_STATE_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10


def oracle_cap() -> int:
    """Current dense-oracle cap: QUASIFREE_MAX_ORACLE_D, hard-capped at 14."""
    raw = os.environ.get("QUASIFREE_MAX_ORACLE_D")
    if raw is None:
        return HARD_ORACLE_CAP
    try:
        value = int(raw)
    except ValueError:
        return HARD_ORACLE_CAP
    return max(1, min(value, HARD_ORACLE_CAP))


def _check_cap(d: int) -> None:
    cap = oracle_cap()
    if d > cap:
        raise DimensionCap(
            f"dense oracle refuses d={d} modes (cap {cap}; 2^{d} basis states)"
        )


@dataclass(frozen=True)
class FockBasis:
    """Graded-lexicographic subset order on the Fock space of d modes."""

    d: int
    subsets: tuple = field(repr=False)
    index: dict = field(repr=False)

    @property
    def size(self) -> int:
        return 1 << self.d

    def sector(self, k: int) -> slice:
        start = sum(comb(self.d, j) for j in range(k))
        return slice(start, start + comb(self.d, k))


@lru_cache(maxsize=None)
def fock_basis(d: int) -> FockBasis:
    if d < 0:
        raise DimensionMismatch(f"mode number must be >= 0, got {d}")
    subsets = []
    for k in range(d + 1):
        subsets.extend(combinations(range(d), k))
    subsets = tuple(subsets)
    index = {s: i for i, s in enumerate(subsets)}
    return FockBasis(d=d, subsets=subsets, index=index)


def _creation_sign(subset: tuple, mode: int) -> int:
    # moving the new factor past the occupied modes below it
    crossings = sum(1 for j in subset if j < mode)
    return -1 if crossings % 2 else 1


def creation_operator(phi) -> np.ndarray:
    """Creation operator of the one-particle vector phi, linear in phi.

    Its adjoint is the annihilation operator (antilinear in the argument).
    """
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    d = phi.shape[0]
    _check_cap(d)
    basis = fock_basis(d)
    out = np.zeros((basis.size, basis.size), dtype=complex)
    for col, subset in enumerate(basis.subsets):
        occupied = set(subset)
        for mode in range(d):
            if mode in occupied or phi[mode] == 0:
                continue
            row = basis.index[tuple(sorted(subset + (mode,)))]
            out[row, col] += _creation_sign(subset, mode) * phi[mode]
    return out


def annihilation_operator(phi) -> np.ndarray:
    return creation_operator(phi).conj().T


def number_operator(d: int) -> np.ndarray:
    """Diagonal operator counting the occupied modes of each basis state."""
    _check_cap(d)
    basis = fock_basis(d)
    return np.diag([float(len(s)) for s in basis.subsets]).astype(complex)


def _sector_block(X: np.ndarray, subs: np.ndarray) -> np.ndarray:
    """All minors det X[rows, cols] for rows, cols running over subs."""
    C, k = subs.shape
    if k == 1:
        return X[np.ix_(subs[:, 0], subs[:, 0])]
    block = np.empty((C, C), dtype=complex)
    # chunk the row subsets so the stacked minor tensor stays ~100 MB
    chunk = max(1, 4_000_000 // max(1, C * k * k))
    for start in range(0, C, chunk):
        rows = subs[start : start + chunk]
        minors = X[rows[:, None, :, None], subs[None, :, None, :]]
        block[start : start + chunk] = np.linalg.det(minors)
    return block


def exp_element(X) -> np.ndarray:
    """Operator acting as the k-fold antisymmetric power of X on each sector.

    Sector-k matrix elements are the k x k minors of X; the sector-0 entry is
    1.  Satisfies the product law E(X)E(Y) = E(XY), E(X)* = E(X*),
    tr E(X) = det(1 + X), and positivity together with X.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got shape {X.shape}")
    d = X.shape[0]
    _check_cap(d)
    basis = fock_basis(d)
    out = np.zeros((basis.size, basis.size), dtype=complex)
    out[0, 0] = 1.0
    for k in range(1, d + 1):
        subs = np.array(list(combinations(range(d), k)), dtype=np.intp)
        sl = basis.sector(k)
        out[sl, sl] = _sector_block(X, subs)
    return out


def exp_spectrum(X, tol: float = 1e-9) -> np.ndarray:
    """Eigenvalue multiset of exp_element(X), length 2^d, computed at
    polynomial cost from the eigenvalues of X.

    The multiset consists of all subset products of the nonzero eigenvalues
    (numerical rank r, threshold ``tol`` relative to the largest magnitude),
    padded with 2^d - 2^r zeros.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise DimensionMismatch(f"expected square matrix, got shape {X.shape}")
    d = X.shape[0]
    _check_cap(d)  # the multiset itself is 2^d long
    lam = np.linalg.eigvals(X)
    scale = max(1.0, float(np.abs(lam).max())) if lam.size else 1.0
    nonzero = lam[np.abs(lam) > tol * scale]
    products = np.array([1.0 + 0.0j])
    for v in nonzero:
        products = np.concatenate([products, v * products])
    zeros = np.zeros((1 << d) - products.size, dtype=complex)
    return np.concatenate([products, zeros])


def _wedge_coordinates(vectors: np.ndarray, subs: np.ndarray) -> np.ndarray:
    """Coordinates of v_1 ^ ... ^ v_k over sector-k basis subsets: the k x k
    minors det(V[subset, :])."""
    C, k = subs.shape
    if k == 0:
        return np.array([1.0 + 0.0j])
    if k == 1:
        return vectors[subs[:, 0], 0]
    return np.linalg.det(vectors[subs, :])


def k_particle_projector(vectors, d: int | None = None) -> np.ndarray:
    """Rank-1 projector onto the wedge line of k orthonormal one-particle
    vectors; with an empty list this is the vacuum projector (d required)."""
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    k = len(vecs)
    if k == 0:
        if d is None:
            raise DimensionMismatch("vacuum projector needs an explicit d")
    else:
        if d is None:
            d = vecs[0].shape[0]
        if any(v.shape[0] != d for v in vecs):
            raise DimensionMismatch("vectors must share the one-particle dimension")
    _check_cap(d)
    basis = fock_basis(d)
    psi = np.zeros(basis.size, dtype=complex)
    if k == 0:
        psi[0] = 1.0
        return np.outer(psi, psi.conj())
    V = np.stack(vecs, axis=1)
    gram_dev = np.abs(V.conj().T @ V - np.eye(k)).max()
    if gram_dev > ORTHONORMAL_TOL:
        raise NotOrthonormal(f"max |V*V - 1| = {gram_dev:.3e}")
    subs = np.array(list(combinations(range(d), k)), dtype=np.intp)
    psi[basis.sector(k)] = _wedge_coordinates(V, subs)
    return np.outer(psi, psi.conj())


def _subset_weights(values: np.ndarray) -> np.ndarray:
    """For each basis subset L, prod_{r in L} v_r * prod_{s not in L} (1 - v_s),
    in graded-lexicographic order."""
    d = values.shape[0]
    basis = fock_basis(d)
    out = np.empty(basis.size, dtype=float)
    for i, subset in enumerate(basis.subsets):
        mask = np.zeros(d, dtype=bool)
        mask[list(subset)] = True
        out[i] = np.prod(np.where(mask, values, 1.0 - values))
    return out


def density_matrix(Q: Symbol) -> np.ndarray:
    """Dense density matrix of the quasi-free state with symbol Q.

    Assembled in eigenform: the wedge projectors of the eigenvector subsets,
    weighted by the products q_L = prod q (in L) * prod (1-q) (outside L).
    This stays well-defined for eigenvalues 0 and 1.  Equivalently
    E(V) diag(q_L) E(V)* for the eigenvector unitary V, which is how it is
    evaluated here.
    """
    d = Q.dim
    _check_cap(d)
    w, V = np.linalg.eigh(Q.matrix)
    w = np.clip(w, 0.0, 1.0)
    weights = _subset_weights(w)
    EV = exp_element(V)
    return (EV * weights) @ EV.conj().T


def is_elementary(phi, d: int, k: int) -> bool:
    """True iff the sector-k vector phi is a single wedge of k one-particle
    vectors, decided by the dimension of {chi : chi ^ phi = 0} being k."""
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if phi.shape[0] != comb(d, k):
        raise DimensionMismatch(
            f"sector-{k} vector over {d} modes has length {comb(d, k)}, got {phi.shape[0]}"
        )
    norm = np.linalg.norm(phi)
    if norm == 0.0:
        raise ZeroVector("elementary-vector test needs a nonzero vector")
    phi = phi / norm
    if k == d:
        return True  # wedge map to the (empty) sector d+1 vanishes identically
    subs_k = list(combinations(range(d), k))
    index_up = {s: i for i, s in enumerate(combinations(range(d), k + 1))}
    T = np.zeros((comb(d, k + 1), d), dtype=complex)
    for row_idx, subset in enumerate(subs_k):
        c = phi[row_idx]
        if c == 0:
            continue
        occupied = set(subset)
        for mode in range(d):
            if mode in occupied:
                continue
            up = index_up[tuple(sorted(subset + (mode,)))]
            T[up, mode] += _creation_sign(subset, mode) * c
    sv = np.linalg.svd(T, compute_uv=False)
    rank = int(np.count_nonzero(sv > ELEMENTARY_KERNEL_TOL))
    return d - rank == k


def split_isomorphism(d1: int, d2: int) -> np.ndarray:
    """Unitary from the Fock space of d1 + d2 modes onto the tensor product
    of the d1- and d2-mode Fock spaces.

    A subset basis vector maps to (subset in first block) x (subset in second
    block, shifted), with the sign of the interleaving permutation.  Because
    basis subsets are kept in ascending mode order and every first-block mode
    precedes every second-block mode, that permutation is the identity and
    all entries are +1.
    """
    _check_cap(d1 + d2)
    basis = fock_basis(d1 + d2)
    left_basis = fock_basis(d1)
    right_basis = fock_basis(d2)
    U = np.zeros((basis.size, basis.size), dtype=complex)
    for fock_idx, subset in enumerate(basis.subsets):
        left = tuple(i for i in subset if i < d1)
        right = tuple(i - d1 for i in subset if i >= d1)
        tensor_idx = left_basis.index[left] * right_basis.size + right_basis.index[right]
        U[tensor_idx, fock_idx] = 1.0
    return U


def parity_operator(d: int) -> np.ndarray:
    """Self-adjoint unitary with entry (-1)^(#occupied) on each basis state;
    equals exp_element(-1), squares to 1, anticommutes with every creation
    operator.  The + sign is a fixed internal choice."""
    _check_cap(d)
    basis = fock_basis(d)
    return np.diag([(-1.0) ** len(s) for s in basis.subsets]).astype(complex)


def wedge_state_product(rho1: np.ndarray, rho2: np.ndarray) -> np.ndarray:
    """Density matrix of the graded product of an even state with another
    state: conjugate rho1 (x) rho2 by the inverse split isomorphism.

    Evenness of rho1 (commuting with the parity operator) is what makes the
    product state well defined; its marginals reproduce rho1 and rho2.
    """
    d1 = _modes_of(rho1)
    d2 = _modes_of(rho2)
    theta = parity_operator(d1)
    dev = np.abs(rho1 @ theta - theta @ rho1).max()
    if dev > EVEN_STATE_TOL:
        raise NotEvenState(f"max |[rho1, parity]| = {dev:.3e}")
    U = split_isomorphism(d1, d2)
    return U.conj().T @ np.kron(rho1, rho2) @ U


def particle_hole_unitary(d: int) -> np.ndarray:
    """Unitary implementing the particle-hole automorphism a(phi) -> a*(conj phi).

    Product of the self-adjoint unitaries a*(e_i) + a(e_i), with one parity
    factor when d is even so that conjugation sends each a_i exactly to a_i*
    (the bare product picks up (-1)^(d-1)).
    """
    _check_cap(d)
    basis = fock_basis(d)
    W = np.eye(basis.size, dtype=complex)
    for mode in range(d):
        e = np.zeros(d)
        e[mode] = 1.0
        c = creation_operator(e)
        W = W @ (c + c.conj().T)
    if (d - 1) % 2:
        W = parity_operator(d) @ W
    return W


def partial_trace(M: np.ndarray, dims: tuple, keep: int) -> np.ndarray:
    """Partial trace of a matrix on a two-factor tensor product.

    ``dims = (D1, D2)`` are the factor dimensions; ``keep`` selects the factor
    that survives (0 or 1).
    """
    D1, D2 = dims
    if M.shape != (D1 * D2, D1 * D2):
        raise DimensionMismatch(f"matrix shape {M.shape} does not match dims {dims}")
    T = M.reshape(D1, D2, D1, D2)
    if keep == 0:
        return np.einsum("abcb->ac", T)
    if keep == 1:
        return np.einsum("abad->bd", T)
    raise ValueError("keep must be 0 or 1")


def _modes_of(op: np.ndarray) -> int:
    n = op.shape[0]
    d = n.bit_length() - 1
    if op.shape != (n, n) or (1 << d) != n:
        raise DimensionMismatch(f"operator shape {op.shape} is not 2^d x 2^d")
    return d
