"""Jamiolkowski symbols and Choi matrices of quasi-free channels, plus the
dense Stinespring oracle used to validate them.

The Stinespring realization of a lambda-kind channel concatenates three maps:
embed the d modes as the first half of 2d modes, rotate by the exponential of
the block unitary

    V = [[A, sqrt(1 - A A*)], [-sqrt(1 - A* A), A*]],

and contract the second half against the quasi-free environment state whose
symbol reproduces B through B = sqrt(1 - A*A) Q' sqrt(1 - A*A).  The rotation
direction (conjugate by E(V), not E(V)*) is the one under which the trace
duality with the Schrodinger action holds; it is frozen here and enforced by
the test suite.  Gamma-kind channels route through the lambda channel with
conjugated A composed with the particle-hole automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KIND_GAMMA, KIND_LAMBDA, QuasiFreeChannel
from .errors import (
    DimensionCap,
    DimensionMismatch,
    InconsistentB,
    NotHermitian,
    SingularB,
    SpectrumOutOfRange,
)
from .fock import (
    density_matrix,
    exp_element,
    fock_basis,
    partial_trace,
    particle_hole_unitary,
    split_isomorphism,
)
from .symbols import Symbol, validate_symbol

DENSE_CHOI_CAP = 6
B_COND_MAX = 1e12
ENV_SYMBOL_TOL = 1e-8


@dataclass(frozen=True)
class JamiolkowskiSymbol:
    """2d-dimensional symbol of the Jamiolkowski state of a channel; its
    top-left d x d block is the totally mixed marginal 1/2."""

    symbol: Symbol
    source: QuasiFreeChannel


@dataclass(frozen=True)
class ChoiExponentialForm:
    """Closed form det(B) * E(argument) of the Choi matrix of the Heisenberg
    channel; argument is 2d x 2d."""

    scale: float
    argument: np.ndarray


def jamiolkowski_symbol(channel: QuasiFreeChannel) -> JamiolkowskiSymbol:
    """Block symbol of the Jamiolkowski state.

    lambda kind:  1/2 [[1, A], [A*, A*A + 2B]]
    gamma kind:   1/2 [[1, -A], [-A*, A*A + 2B^T]]

    Validation as a Symbol is exactly the complete-positivity test of the
    source channel, so it cannot fail for a validated channel.
    """
    A, B = channel.A, channel.B
    eye = np.eye(channel.dim)
    gram = A.conj().T @ A
    if channel.kind == KIND_LAMBDA:
        blocks = [[eye, A], [A.conj().T, gram + 2.0 * B]]
    else:
        blocks = [[eye, -A], [-A.conj().T, gram + 2.0 * B.T]]
    sym = validate_symbol(0.5 * np.block(blocks))
    return JamiolkowskiSymbol(symbol=sym, source=channel)


def choi_exponential_form(channel: QuasiFreeChannel) -> ChoiExponentialForm:
    """Closed form of the Choi matrix, defined when B is invertible.

    lambda kind argument: [[B^-1 - 1, B^-1 A*], [A B^-1, 1 + A B^-1 A*]];
    the gamma kind substitutes conj(A) for A.  Raises :class:`SingularB`
    otherwise; callers may fall back to :func:`dense_choi` at small d.
    """
    A, B = channel.A, channel.B
    eye = np.eye(channel.dim)
    if np.linalg.cond(B) >= B_COND_MAX:
        raise SingularB(
            "B is numerically singular; the exponential Choi form does not apply"
        )
    if channel.kind == KIND_GAMMA:
        A = np.conj(A)
    Binv = np.linalg.inv(B)
    Binv = (Binv + Binv.conj().T) / 2.0
    argument = np.block(
        [
            [Binv - eye, Binv @ A.conj().T],
            [A @ Binv, eye + A @ Binv @ A.conj().T],
        ]
    )
    scale = np.linalg.det(B)
    return ChoiExponentialForm(scale=float(scale.real), argument=argument)


def _check_dense_dim(d: int) -> None:
    if d > DENSE_CHOI_CAP:
        raise DimensionCap(
            f"dense Choi/Stinespring constructions are capped at d={DENSE_CHOI_CAP}, got {d}"
        )


def _psd_sqrt_and_pinv_sqrt(H: np.ndarray):
    w, V = np.linalg.eigh((H + H.conj().T) / 2.0)
    root = np.sqrt(np.clip(w, 0.0, None))
    inv_root = np.zeros_like(root)
    mask = root > 1e-10 * max(1.0, float(root.max()))
    inv_root[mask] = 1.0 / root[mask]
    return (V * root) @ V.conj().T, (V * inv_root) @ V.conj().T


def _environment_symbol(A: np.ndarray, B: np.ndarray) -> Symbol:
    eye = np.eye(A.shape[0])
    S = eye - A.conj().T @ A
    root, pinv_root = _psd_sqrt_and_pinv_sqrt(S)
    Qp = pinv_root @ B @ pinv_root
    Qp = (Qp + Qp.conj().T) / 2.0
    if np.abs(root @ Qp @ root - B).max() > ENV_SYMBOL_TOL:
        raise InconsistentB(
            "no environment symbol in [0, 1] reproduces B through sqrt(1-A*A)"
        )
    try:
        return validate_symbol(Qp, tol=ENV_SYMBOL_TOL)
    except (NotHermitian, SpectrumOutOfRange) as exc:
        raise InconsistentB(str(exc)) from exc


def _stinespring_pieces(A: np.ndarray, B: np.ndarray):
    """Rotation G (tensor coordinates over Fock(d) x Fock(d)) and environment
    density matrix for the lambda-kind channel (A, B)."""
    d = A.shape[0]
    eye = np.eye(d)
    root_left, _ = _psd_sqrt_and_pinv_sqrt(eye - A @ A.conj().T)
    root_right, _ = _psd_sqrt_and_pinv_sqrt(eye - A.conj().T @ A)
    V = np.block([[A, root_left], [-root_right, A.conj().T]])
    U = split_isomorphism(d, d)
    G = U @ exp_element(V) @ U.conj().T
    rho_env = density_matrix(_environment_symbol(A, B))
    return G, rho_env


def stinespring_heisenberg(channel: QuasiFreeChannel, x: np.ndarray) -> np.ndarray:
    """Dense Heisenberg action of the channel on a Fock operator x.

    For gamma-kind channels the action is the lambda channel with conjugated
    A followed by the particle-hole automorphism.
    """
    d = channel.dim
    _check_dense_dim(d)
    n = fock_basis(d).size
    x = np.asarray(x, dtype=complex)
    if x.shape != (n, n):
        raise DimensionMismatch(f"operator shape {x.shape}, expected {(n, n)}")
    if channel.kind == KIND_GAMMA:
        W = particle_hole_unitary(d)
        inner = _heisenberg_core(np.conj(channel.A), channel.B, x)
        return W @ inner @ W.conj().T
    return _heisenberg_core(channel.A, channel.B, x)


def _heisenberg_core(A: np.ndarray, B: np.ndarray, x: np.ndarray) -> np.ndarray:
    G, rho_env = _stinespring_pieces(A, B)
    n = x.shape[0]
    M = G @ np.kron(x, np.eye(n)) @ G.conj().T
    weighted = np.kron(np.eye(n), rho_env) @ M
    return partial_trace(weighted, (n, n), keep=0)


def stinespring_schrodinger(channel: QuasiFreeChannel, rho: np.ndarray) -> np.ndarray:
    """Dense Schrodinger action (the trace dual of
    :func:`stinespring_heisenberg`) on a density matrix."""
    d = channel.dim
    _check_dense_dim(d)
    n = fock_basis(d).size
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (n, n):
        raise DimensionMismatch(f"state shape {rho.shape}, expected {(n, n)}")
    if channel.kind == KIND_GAMMA:
        W = particle_hole_unitary(d)
        return _schrodinger_core(np.conj(channel.A), channel.B, W.conj().T @ rho @ W)
    return _schrodinger_core(channel.A, channel.B, rho)


def _schrodinger_core(A: np.ndarray, B: np.ndarray, rho: np.ndarray) -> np.ndarray:
    G, rho_env = _stinespring_pieces(A, B)
    n = rho.shape[0]
    M = G.conj().T @ np.kron(rho, rho_env) @ G
    return partial_trace(M, (n, n), keep=0)


def dense_choi(channel: QuasiFreeChannel) -> np.ndarray:
    """Choi matrix sum_ij e_ij (x) channel*(e_ij) over the Fock matrix units,
    with the Heisenberg action realized by the Stinespring oracle.  Its
    partial trace over the first factor is the identity."""
    d = channel.dim
    _check_dense_dim(d)
    n = fock_basis(d).size
    if channel.kind == KIND_GAMMA:
        A = np.conj(channel.A)
    else:
        A = channel.A
    G, rho_env = _stinespring_pieces(A, channel.B)
    # C[(i,a),(j,b)] = [channel*(e_ij)]_{ab}
    #               = sum_{s,s',c} rho_env[s,s'] G[(a,s'),(i,c)] conj(G[(b,s),(j,c)])
    G4 = G.reshape(n, n, n, n)
    H = np.einsum("sp,bsjc->bpjc", rho_env, np.conj(G4), optimize=True)
    left = G4.transpose(2, 0, 1, 3).reshape(n * n, n * n)
    right = H.transpose(2, 0, 1, 3).reshape(n * n, n * n)
    C = left @ right.T  # rows (i,a), cols (j,b)
    if channel.kind == KIND_GAMMA:
        W = particle_hole_unitary(d)
        WW = np.kron(np.eye(n), W)
        C = WW @ C @ WW.conj().T
    return C


def dense_jamiolkowski(channel: QuasiFreeChannel) -> np.ndarray:
    """Jamiolkowski state (1/2^d) sum_ij e_ij (x) channel(e_ij): the image of
    the maximally entangled projector under id (x) channel, built densely."""
    d = channel.dim
    _check_dense_dim(d)
    n = fock_basis(d).size
    if channel.kind == KIND_GAMMA:
        A = np.conj(channel.A)
        W = particle_hole_unitary(d)
    else:
        A = channel.A
        W = None
    G, rho_env = _stinespring_pieces(A, channel.B)
    out = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[i, j] = 1.0
            rho_in = unit if W is None else W.conj().T @ unit @ W
            M = G.conj().T @ np.kron(rho_in, rho_env) @ G
            out += np.kron(unit, partial_trace(M, (n, n), keep=0))
    return out / n
