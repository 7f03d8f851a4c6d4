"""Quasi-free completely positive maps on symbols.

Two families, both parameterized by a pair (A, B) of one-particle matrices:

* ``lambda`` kind, valid iff 0 <= B <= 1 - A*A, acting on symbols as
  Q -> A* Q A + B;
* ``gamma`` kind (the particle-hole-twisted family), valid iff
  0 <= B <= 1 - A^T conj(A), acting as Q -> B + A^T (1 - Q^T) conj(A).

The Heisenberg actions on exponential elements and on quasi-free density
matrices have closed forms (scale, argument) that never touch the 2^d-dim
Fock space; densifying a :class:`ScaledExponential` is always an explicit
oracle-side call.

Convention note: the gamma family equals the lambda family with conjugated A,
pre-composed with the particle-hole involution Q -> 1 - Q^T.  All gamma
formulas below are derived from that identity, which is the unique reading
under which the Schrodinger action, the Heisenberg closed forms, and the
trace duality tr(channel(rho) x) = tr(rho channel*(x)) are mutually
consistent; the dense oracle tests pin it down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotCompletelyPositive, SingularPivot
from .symbols import Symbol, validate_symbol

KIND_LAMBDA = "lambda"
KIND_GAMMA = "gamma"

PIVOT_COND_MAX = 1e12
CP_TOL = 1e-10
#: relative singular-value threshold for the rank test in classify_affine_map
RANK_TOL = 1e-10


@dataclass(frozen=True)
class QuasiFreeChannel:
    """A validated quasi-free channel; construct through :func:`new_channel`."""

    kind: str
    A: np.ndarray
    B: np.ndarray

    @property
    def dim(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class ScaledExponential:
    """The pair (scale, argument) representing scale * E(argument); the closed
    form of Heisenberg channel outputs.  Kept unexpanded on purpose."""

    scale: complex
    argument: np.ndarray


@dataclass(frozen=True)
class AffineSymbolMap:
    """gamma(Q) = sign * A* (Q or Q^T) A + B, for CP classification."""

    sign: int
    transpose_input: bool
    A: np.ndarray
    B: np.ndarray


def _square_pair(A, B):
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"A must be square, got shape {A.shape}")
    if B.shape != A.shape:
        raise DimensionMismatch(f"A and B shapes differ: {A.shape} vs {B.shape}")
    return A, B


def _min_eig(H: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((H + H.conj().T) / 2.0)[0])


def cp_bound(kind: str, A: np.ndarray) -> np.ndarray:
    """Upper bound matrix for B in the CP constraint of the given kind."""
    if kind == KIND_LAMBDA:
        return np.eye(A.shape[0]) - A.conj().T @ A
    return np.eye(A.shape[0]) - A.T @ np.conj(A)


def new_channel(kind: str, A, B, tol: float = CP_TOL) -> QuasiFreeChannel:
    """Validate (kind, A, B) as a quasi-free channel.

    Checks B Hermitian and 0 <= B <= 1 - A*A (lambda) or
    0 <= B <= 1 - A^T conj(A) (gamma), reporting the violating eigenvalue on
    failure.
    """
    if kind not in (KIND_LAMBDA, KIND_GAMMA):
        raise ValueError(f"kind must be '{KIND_LAMBDA}' or '{KIND_GAMMA}', got {kind!r}")
    A, B = _square_pair(A, B)
    herm_dev = np.abs(B - B.conj().T).max() if B.size else 0.0
    if herm_dev > tol:
        raise NotCompletelyPositive(
            f"B must be Hermitian; max |B - B*| = {herm_dev:.3e}"
        )
    B = (B + B.conj().T) / 2.0
    low = _min_eig(B)
    if low < -tol:
        raise NotCompletelyPositive(f"B has eigenvalue {low:.6e} < 0")
    high = _min_eig(cp_bound(kind, A) - B)
    if high < -tol:
        raise NotCompletelyPositive(
            f"upper CP constraint violated by eigenvalue {high:.6e}"
        )
    A = A.copy()  # freeze private copies, never the caller's arrays
    for m in (A, B):
        m.setflags(write=False)
    return QuasiFreeChannel(kind=kind, A=A, B=B)


def apply_schrodinger(channel: QuasiFreeChannel, Q: Symbol) -> Symbol:
    """Image symbol of the state evolution, re-validated as a Symbol."""
    if channel.dim != Q.dim:
        raise DimensionMismatch(f"channel dim {channel.dim} vs symbol dim {Q.dim}")
    A, B = channel.A, channel.B
    if channel.kind == KIND_LAMBDA:
        M = A.conj().T @ Q.matrix @ A + B
    else:
        eye = np.eye(channel.dim)
        M = B + A.T @ (eye - Q.matrix.T) @ np.conj(A)
    return validate_symbol(M, tol=1e-8)


def _checked_pivot(P: np.ndarray) -> np.ndarray:
    if np.linalg.cond(P) >= PIVOT_COND_MAX:
        raise SingularPivot(
            f"pivot condition number {np.linalg.cond(P):.3e} >= {PIVOT_COND_MAX:.1e}; "
            "the closed form does not apply"
        )
    return P


def apply_heisenberg_exp(channel: QuasiFreeChannel, X) -> ScaledExponential:
    """Heisenberg image of an exponential element E(X), as (scale, argument)."""
    X = np.asarray(X, dtype=complex)
    if X.shape != (channel.dim, channel.dim):
        raise DimensionMismatch(f"X shape {X.shape} vs channel dim {channel.dim}")
    A, B = channel.A, channel.B
    eye = np.eye(channel.dim)
    if channel.kind == KIND_LAMBDA:
        pivot = _checked_pivot(eye - B + X @ B)
        argument = eye + A @ np.linalg.solve(pivot, (X - eye)) @ A.conj().T
    else:
        M = B.T + A.conj().T @ A
        pivot = _checked_pivot(eye - M + X.T @ M)
        argument = eye + A @ np.linalg.solve(pivot, (eye - X.T)) @ A.conj().T
    return ScaledExponential(scale=complex(np.linalg.det(pivot)), argument=argument)


def apply_heisenberg_state(channel: QuasiFreeChannel, Q: Symbol) -> ScaledExponential:
    """Heisenberg image of the quasi-free density matrix with symbol Q.

    Well defined for every symbol, including projectors, as long as the pivot
    is invertible; agrees with ``det(1-Q) * apply_heisenberg_exp(c, Q/(1-Q))``
    on the interior.
    """
    if channel.dim != Q.dim:
        raise DimensionMismatch(f"channel dim {channel.dim} vs symbol dim {Q.dim}")
    A, B = channel.A, channel.B
    eye = np.eye(channel.dim)
    Qm = Q.matrix
    if channel.kind == KIND_LAMBDA:
        pivot = _checked_pivot(eye - Qm + (2.0 * Qm - eye) @ B)
        core = 2.0 * Qm - eye
    else:
        M = B.T + A.conj().T @ A
        Qt = Qm.T
        pivot = _checked_pivot(eye - Qt + (2.0 * Qt - eye) @ M)
        core = eye - 2.0 * Qt
    argument = eye + A @ np.linalg.solve(pivot, core) @ A.conj().T
    return ScaledExponential(scale=complex(np.linalg.det(pivot)), argument=argument)


def compose(c2: QuasiFreeChannel, c1: QuasiFreeChannel) -> QuasiFreeChannel:
    """The channel acting as c2 after c1, as a single validated channel.

    Kinds compose like parities: lambda.lambda -> lambda,
    gamma.lambda and lambda.gamma -> gamma, gamma.gamma -> lambda.  The (A, B)
    pairs below come from composing the two affine symbol actions; the
    two-step-versus-one-step identity is enforced by tests.
    """
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"channel dims differ: {c1.dim} vs {c2.dim}")
    A1, B1, A2, B2 = c1.A, c1.B, c2.A, c2.B
    eye = np.eye(c1.dim)
    if c1.kind == KIND_LAMBDA and c2.kind == KIND_LAMBDA:
        return new_channel(KIND_LAMBDA, A1 @ A2, A2.conj().T @ B1 @ A2 + B2)
    if c1.kind == KIND_LAMBDA and c2.kind == KIND_GAMMA:
        B = B2 + A2.T @ (eye - B1.T - A1.T @ np.conj(A1)) @ np.conj(A2)
        return new_channel(KIND_GAMMA, A1 @ A2, B)
    if c1.kind == KIND_GAMMA and c2.kind == KIND_LAMBDA:
        return new_channel(KIND_GAMMA, A1 @ np.conj(A2), A2.conj().T @ B1 @ A2 + B2)
    B = B2 + A2.T @ (eye - B1.T - A1.conj().T @ A1) @ np.conj(A2)
    return new_channel(KIND_LAMBDA, A1 @ np.conj(A2), B)


def _numerical_rank(A: np.ndarray) -> int:
    sv = np.linalg.svd(A, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > RANK_TOL * sv[0]))


def classify_affine_map(m: AffineSymbolMap, tol: float = CP_TOL) -> str:
    """Decide whether the affine symbol map extends to a completely positive
    state map; returns "CP" or "NotCP".

    The two canonical forms carry the eigenvalue tests 0 <= B <= 1 - A*A
    (sign +, no transpose) and A*A <= B <= 1 (sign -, transpose).  The two
    remaining (sign, transpose) combinations are congruences composed with a
    bare transpose; the transpose can be absorbed by conjugating the factors
    exactly when A has rank <= 1 (write A = w u*, so that the quadratic part
    is <conj w, Q conj w> u u* resp. <w, Q w> u u*, a rank-one congruence of
    the untransposed or transposed canonical form with the same A*A).  For
    rank(A) >= 2 no rewriting exists and the map is never CP.
    """
    A, B = _square_pair(m.A, m.B)
    if m.sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {m.sign}")
    if B.size and np.abs(B - B.conj().T).max() > tol:
        return "NotCP"
    canonical = (m.sign == 1) != bool(m.transpose_input)
    if not canonical and _numerical_rank(A) > 1:
        return "NotCP"
    eye = np.eye(A.shape[0])
    gram = A.conj().T @ A
    if m.sign == 1:
        ok = _min_eig(B) >= -tol and _min_eig(eye - gram - B) >= -tol
    else:
        ok = _min_eig(B - gram) >= -tol and _min_eig(eye - B) >= -tol
    return "CP" if ok else "NotCP"
