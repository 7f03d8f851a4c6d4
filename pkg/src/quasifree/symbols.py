"""Validation, spectral analysis, and convex manipulation of one-particle symbols.

A symbol is a d x d Hermitian matrix Q with 0 <= Q <= 1.  It fully determines
a gauge-invariant quasi-free state on d fermionic modes; every functional of
the state computed in this package reduces to a functional of Q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotQuasiFreeMixture,
    SpectrumOutOfRange,
)

HERMITIAN_TOL = 1e-10
#: singular values below this (relative to the max-entry norm) count as zero
#: when deciding whether a symbol difference has rank <= 1
MIX_RANK_TOL = 1e-9


@dataclass(frozen=True)
class Symbol:
    """A validated one-particle symbol.

    ``matrix`` is exactly Hermitian; ``eigenvalues`` are stored descending and
    clamped to [0, 1].  Construct through :func:`validate_symbol`, which is
    where the tolerance policy lives.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectralSymbol:
    """Eigendecomposition of a symbol: eigenvalues descending in [0, 1],
    eigenvectors as the columns of a unitary matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def validate_symbol(M, tol: float = HERMITIAN_TOL) -> Symbol:
    """Check that M is a symbol and return it with eigenvalues clamped to [0, 1].

    Raises :class:`NotHermitian` if ``max|M - M*| > tol`` and
    :class:`SpectrumOutOfRange` if any eigenvalue lies below ``-tol`` or above
    ``1 + tol``.  Violations within ``tol`` are treated as floating-point dust
    and clamped away.
    """
    M = _as_square(M)
    herm_dev = np.abs(M - M.conj().T).max() if M.size else 0.0
    if herm_dev > tol:
        raise NotHermitian(f"max |M - M*| = {herm_dev:.3e} exceeds tol {tol:.1e}")
    H = (M + M.conj().T) / 2.0
    w = np.linalg.eigvalsh(H)
    if w[0] < -tol or w[-1] > 1.0 + tol:
        raise SpectrumOutOfRange(
            f"eigenvalues in [{w[0]:.6e}, {w[-1]:.6e}] leave [0, 1] beyond tol {tol:.1e}"
        )
    if w[0] < 0.0 or w[-1] > 1.0:
        # clamp requires eigenvectors; taken only when the spectrum actually
        # pokes out of [0, 1], so the common path stays at eigvalsh cost
        w, V = np.linalg.eigh(H)
        w = np.clip(w, 0.0, 1.0)
        H = (V * w) @ V.conj().T
        H = (H + H.conj().T) / 2.0
    return Symbol(matrix=_frozen(H), eigenvalues=_frozen(w[::-1].copy()))


def spectral(Q: Symbol) -> SpectralSymbol:
    """Eigendecomposition of a symbol with eigenvalues sorted descending."""
    w, V = np.linalg.eigh(Q.matrix)
    order = np.argsort(-w, kind="stable")
    w = np.clip(w[order], 0.0, 1.0)
    return SpectralSymbol(eigenvalues=_frozen(w), eigenvectors=_frozen(V[:, order]))


def conjugate_matrix(A) -> np.ndarray:
    """Entrywise complex conjugate in the distinguished standard basis.

    This is the matrix of the conjugated operator; for Hermitian input it
    coincides with the transpose.  Applying it twice is the identity.
    """
    return np.conj(np.asarray(A, dtype=complex))


def mix_symbols(Q1: Symbol, Q2: Symbol, lam: float) -> Symbol:
    """Symbol of the convex mixture of two quasi-free states, when it exists.

    The mixture ``lam * state(Q1) + (1 - lam) * state(Q2)`` is quasi-free
    exactly when ``Q1 - Q2`` has rank 0 or 1, in which case its symbol is the
    affine combination ``lam*Q1 + (1-lam)*Q2``.  Otherwise raises
    :class:`NotQuasiFreeMixture`.
    """
    if Q1.dim != Q2.dim:
        raise DimensionMismatch(f"symbol dims differ: {Q1.dim} vs {Q2.dim}")
    if not 0.0 < lam < 1.0:
        raise ValueError(f"mixture weight must lie in (0, 1), got {lam}")
    D = Q1.matrix - Q2.matrix
    scale = np.abs(D).max()
    if scale > 0.0:
        sv = np.linalg.svd(D, compute_uv=False)
        rank = int(np.count_nonzero(sv > MIX_RANK_TOL * scale))
        if rank >= 2:
            raise NotQuasiFreeMixture(
                f"symbol difference has numerical rank {rank}; "
                "the convex combination of the two states is not quasi-free"
            )
    return validate_symbol(lam * Q1.matrix + (1.0 - lam) * Q2.matrix)
