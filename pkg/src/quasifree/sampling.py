"""Seeded random instances: symbols, unitaries, channels.

Shared by the oracle-check command and the test suite so that every
cross-check runs on a reproducible stream.
"""

from __future__ import annotations

import numpy as np

from .channels import QuasiFreeChannel, cp_bound, new_channel
from .symbols import Symbol, validate_symbol


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (M + M.conj().T) / 2.0


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    M = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(M)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_symbol(
    d: int, rng: np.random.Generator, low: float = 0.0, high: float = 1.0
) -> Symbol:
    """Random symbol with eigenvalues uniform in [low, high]; pass a positive
    ``low`` / sub-unit ``high`` to stay strictly interior."""
    V = random_unitary(d, rng)
    u = rng.uniform(low, high, d)
    return validate_symbol((V * u) @ V.conj().T)


def random_channel(
    d: int,
    rng: np.random.Generator,
    kind: str,
    contraction: tuple = (0.1, 0.9),
) -> QuasiFreeChannel:
    """Random valid channel of the given kind.

    A is a random contraction with singular values in ``contraction``; B is
    drawn as sqrt(bound) * (random interior symbol) * sqrt(bound) against the
    kind's upper bound 1 - A*A or 1 - A^T conj(A), which makes the pair valid
    by construction and keeps closed-form pivots well conditioned.
    """
    U1 = random_unitary(d, rng)
    U2 = random_unitary(d, rng)
    s = rng.uniform(*contraction, d)
    A = (U1 * s) @ U2.conj().T
    bound = cp_bound(kind, A)
    w, V = np.linalg.eigh(bound)
    root = (V * np.sqrt(np.clip(w, 0.0, None))) @ V.conj().T
    inner = random_symbol(d, rng, 0.1, 0.9)
    B = root @ inner.matrix @ root
    return new_channel(kind, A, (B + B.conj().T) / 2.0)
