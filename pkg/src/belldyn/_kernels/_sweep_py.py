"""Pure-numpy backend for the measurement-sweep hot loop.

Directions are processed as one batch: projector construction, the
measured state and the Hermitian eigensolve are all vectorized over the
leading axis, so the per-direction Python overhead is amortized away.
"""

from __future__ import annotations

import numpy as np

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def measurement_residual_norms(rho: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """tr|rho - M(rho, n)| for each Bloch direction n.

    M(rho, n) is the non-selective projective measurement of the first
    qubit along n: sum_k (P_k x I) rho (P_k x I) with P_+- = (I +- n.sigma)/2.

    Args:
        rho: (4, 4) complex density matrix.
        directions: (N, 3) float array of unit Bloch vectors.

    Returns:
        (N,) float array of trace norms.
    """
    rho = np.asarray(rho, dtype=complex)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    n_dot_sigma = (
        dirs[:, 0, None, None] * _SX
        + dirs[:, 1, None, None] * _SY
        + dirs[:, 2, None, None] * _SZ
    )
    plus = 0.5 * (_I2 + n_dot_sigma)
    minus = 0.5 * (_I2 - n_dot_sigma)
    # P x I2 for a batch of 2x2 projectors P
    p_plus = np.einsum("nab,cd->nacbd", plus, _I2).reshape(-1, 4, 4)
    p_minus = np.einsum("nab,cd->nacbd", minus, _I2).reshape(-1, 4, 4)
    measured = np.einsum("nij,jk,nkl->nil", p_plus, rho, p_plus)
    measured += np.einsum("nij,jk,nkl->nil", p_minus, rho, p_minus)
    eigenvalues = np.linalg.eigvalsh(rho - measured)
    return np.abs(eigenvalues).sum(axis=-1)


def hermitian_eigenvalues_4(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a 4x4 Hermitian matrix (backend parity hook)."""
    return np.linalg.eigvalsh(np.asarray(matrix, dtype=complex))
