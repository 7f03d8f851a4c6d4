"""Shared dense-side oracles for the test suite.

These deliberately avoid the symbol-level code paths they are used to check:
entropies come from eigenvalues of explicit density matrices, subset products
from brute-force enumeration.
"""

from itertools import combinations

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def dense_von_neumann(rho: np.ndarray) -> float:
    w = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log(w)))


def dense_renyi(rho: np.ndarray, p: float) -> float:
    w = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    return float(np.log(np.sum(w**p)) / (1.0 - p))


def dense_relative(r1: np.ndarray, r2: np.ndarray) -> float:
    w1, V1 = np.linalg.eigh(r1)
    w2, V2 = np.linalg.eigh(r2)
    log1 = (V1 * np.log(np.clip(w1, 1e-300, None))) @ V1.conj().T
    log2 = (V2 * np.log(np.clip(w2, 1e-300, None))) @ V2.conj().T
    return float(np.trace(r1 @ (log1 - log2)).real)


def brute_subset_products(q) -> np.ndarray:
    """All 2^d products prod_{r in L} q_r prod_{s not in L} (1 - q_s), by
    explicit enumeration of the subsets."""
    q = np.asarray(q, dtype=float)
    d = q.shape[0]
    out = []
    for k in range(d + 1):
        for subset in combinations(range(d), k):
            inside = np.prod([q[r] for r in subset]) if subset else 1.0
            rest = [s for s in range(d) if s not in subset]
            outside = np.prod([1.0 - q[s] for s in rest]) if rest else 1.0
            out.append(inside * outside)
    return np.array(out)


def random_density(n: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
