"""Two-qubit state algebra in the Bell-diagonal representation.

Operators are plain numpy arrays (2x2 for single-qubit, 4x4 for two-qubit).
A Bell-diagonal state is parametrized by the three spin-spin correlation
functions c_i = <sigma_i x sigma_i>:

    rho = (I4 + c1 sx x sx + c2 sy x sy + c3 sz x sz) / 4

with sigma_1 = sx, sigma_2 = sy, sigma_3 = sz and |0> the spin-up state.
The state is physical iff the four eigenvalues

    (1 + c1 - c2 + c3)/4, (1 - c1 + c2 + c3)/4,
    (1 + c1 + c2 - c3)/4, (1 - c1 - c2 - c3)/4

are nonnegative (the correlation tetrahedron).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerances shared across the package.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9          # slack for states on the tetrahedron boundary
TIE_TOL = 1e-12         # |c_i| values closer than this count as tied

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Pauli matrices indexed by axis 1, 2, 3.
PAULIS = {1: SIGMA_X, 2: SIGMA_Y, 3: SIGMA_Z}


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation triple (c1, c2, c3) of a physical Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        spectrum = self.eigenvalues()
        if min(spectrum) < -PSD_TOL:
            raise ValueError(
                f"correlations ({self.c1}, {self.c2}, {self.c3}) lie outside "
                f"the physical tetrahedron (smallest eigenvalue {min(spectrum):.3e})"
            )

    def eigenvalues(self) -> tuple[float, float, float, float]:
        """Eigenvalues of the corresponding density matrix, in closed form."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return (
            (1 + c1 - c2 + c3) / 4,
            (1 - c1 + c2 + c3) / 4,
            (1 + c1 + c2 - c3) / 4,
            (1 - c1 - c2 - c3) / 4,
        )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class SortedCorrelations:
    """The magnitudes |c_i| in ascending order, with their originating axes.

    Ties within TIE_TOL are broken by ascending axis index, so the role
    assignment (minimum / intermediate / maximum) is deterministic.
    """

    c_minus: float
    c_zero: float
    c_plus: float
    axis_minus: int
    axis_zero: int
    axis_plus: int


def sort_correlations(c: BellDiagonalParams) -> SortedCorrelations:
    """Classify |c1|, |c2|, |c3| into minimum, intermediate and maximum."""
    entries = [(abs(c.c1), 1), (abs(c.c2), 2), (abs(c.c3), 3)]
    entries.sort()
    # Near-ties are ordered by axis index, not by the sub-tolerance residue.
    for _ in range(2):
        for j in range(2):
            (va, aa), (vb, ab) = entries[j], entries[j + 1]
            if abs(va - vb) <= TIE_TOL and aa > ab:
                entries[j], entries[j + 1] = entries[j + 1], entries[j]
    (v_minus, a_minus), (v_zero, a_zero), (v_plus, a_plus) = entries
    return SortedCorrelations(v_minus, v_zero, v_plus, a_minus, a_zero, a_plus)


def bell_diagonal_to_density(c: BellDiagonalParams) -> np.ndarray:
    """Build the 4x4 density matrix (I4 + sum_i c_i sigma_i x sigma_i) / 4."""
    rho = IDENTITY_4.copy()
    for axis, coeff in zip((1, 2, 3), c.as_tuple()):
        rho += coeff * np.kron(PAULIS[axis], PAULIS[axis])
    return rho / 4


def density_to_correlations(rho: np.ndarray) -> BellDiagonalParams:
    """Extract c_i = Re tr(rho sigma_i x sigma_i) from a density matrix.

    Components of rho outside the Bell-diagonal family are not captured.
    """
    rho = validate_density_matrix(rho)
    coeffs = [
        float(np.trace(rho @ np.kron(PAULIS[axis], PAULIS[axis])).real)
        for axis in (1, 2, 3)
    ]
    return BellDiagonalParams(*coeffs)


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Real eigenvalues of a Hermitian 2x2 or 4x4 matrix, ascending."""
    matrix = _check_hermitian(matrix)
    return np.linalg.eigvalsh(matrix)


def trace_norm(matrix: np.ndarray) -> float:
    """Schatten 1-norm tr|M| of a Hermitian matrix (sum of |eigenvalues|)."""
    return float(np.abs(hermitian_eigenvalues(matrix)).sum())


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return as complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    deviation = np.abs(rho - rho.conj().T).max()
    if deviation > HERMITICITY_TOL:
        raise ValueError(f"density matrix is not Hermitian (max deviation {deviation:.3e})")
    trace = rho.trace()
    if abs(trace - 1) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {trace}, expected 1")
    smallest = np.linalg.eigvalsh(rho)[0]
    if smallest < -PSD_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return rho


def marginal_a(rho: np.ndarray) -> np.ndarray:
    """Reduced 2x2 state of the first qubit (second qubit traced out)."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("ikjk->ij", r)


def marginal_b(rho: np.ndarray) -> np.ndarray:
    """Reduced 2x2 state of the second qubit (first qubit traced out)."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("ikil->kl", r)


def _check_hermitian(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] not in (2, 4):
        raise ValueError(f"expected a square 2x2 or 4x4 matrix, got shape {matrix.shape}")
    deviation = np.abs(matrix - matrix.conj().T).max()
    if deviation > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (max deviation {deviation:.3e})")
    return matrix
