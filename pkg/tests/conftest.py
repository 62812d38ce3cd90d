"""Shared sampling helpers for the test suite."""

from __future__ import annotations

import numpy as np

from belldyn.qstate import BellDiagonalParams

#: Pure-state corners of the physical correlation tetrahedron.
TETRAHEDRON_VERTICES = np.array(
    [(1, -1, 1), (-1, 1, 1), (1, 1, -1), (-1, -1, -1)], dtype=float
)


def random_correlations(rng: np.random.Generator, shrink: float = 0.0) -> BellDiagonalParams:
    """Uniform draw from the tetrahedron, optionally pulled toward the center."""
    weights = rng.dirichlet(np.ones(4))
    c = (1.0 - shrink) * (weights @ TETRAHEDRON_VERTICES)
    return BellDiagonalParams(*c)


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random two-qubit state (Ginibre construction)."""
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / rho.trace()


def random_hermitian(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2
