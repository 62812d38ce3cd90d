"""Trace-norm geometric quantum and classical correlations.

Two independent routes are provided for Bell-diagonal states:

* closed forms: the discord equals the intermediate magnitude c0 and the
  classical correlation the maximum magnitude c+, with the closest
  zero-discord state retaining only the dominant correlation axis;
* a brute-force sweep that minimizes tr|rho - M(rho, n)| over measurement
  directions n on the Bloch sphere, where M is the non-selective
  projective measurement of subsystem A along n.

The sweep never consults the closed forms; it exists to check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .qstate import (
    BellDiagonalParams,
    IDENTITY_2,
    IDENTITY_4,
    PAULIS,
    marginal_a,
    marginal_b,
    sort_correlations,
    trace_norm,
    validate_density_matrix,
)

GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))

#: Default sweep resolution: coarse lattice size and refinement depth.
DEFAULT_COARSE_POINTS = 2000
DEFAULT_REFINEMENT_LEVELS = 3

_CAP_SHRINK = 0.3          # cap radius factor per refinement level
_DENSITY_GROWTH = 10.0     # point density factor per refinement level
_MIN_CAP_POINTS = 32


@dataclass(frozen=True)
class MeasurementDirection:
    """Bloch direction n = (sin t cos p, sin t sin p, cos t) of a local measurement."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "MeasurementDirection":
        x, y, z = (float(v) for v in vector)
        theta = math.acos(min(1.0, max(-1.0, z)))
        phi = math.atan2(y, x) % (2 * math.pi)
        return cls(theta, phi)

    def unit_vector(self) -> np.ndarray:
        sin_t = math.sin(self.theta)
        return np.array([
            sin_t * math.cos(self.phi),
            sin_t * math.sin(self.phi),
            math.cos(self.theta),
        ])

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Rank-1 projectors (I +- n.sigma)/2 onto the +-n spin states."""
        n = self.unit_vector()
        n_dot_sigma = n[0] * PAULIS[1] + n[1] * PAULIS[2] + n[2] * PAULIS[3]
        return 0.5 * (IDENTITY_2 + n_dot_sigma), 0.5 * (IDENTITY_2 - n_dot_sigma)


@dataclass(frozen=True)
class SweepResult:
    minimum: float
    argmin: MeasurementDirection
    grid_points: int
    refinement_levels: int


def geometric_quantum_discord(c: BellDiagonalParams) -> float:
    """Trace-norm geometric discord of a Bell-diagonal state: the intermediate |c_i|."""
    return sort_correlations(c).c_zero


def geometric_classical_correlation(c: BellDiagonalParams) -> float:
    """Trace-norm geometric classical correlation: the maximum |c_i|."""
    return sort_correlations(c).c_plus


def closest_classical_state(c: BellDiagonalParams) -> np.ndarray:
    """The nearest zero-discord state: only the dominant correlation axis survives."""
    dominant = sort_correlations(c).axis_plus
    coeff = c.as_tuple()[dominant - 1]
    return (IDENTITY_4 + coeff * np.kron(PAULIS[dominant], PAULIS[dominant])) / 4


def product_of_marginals(rho: np.ndarray) -> np.ndarray:
    """rho_A x rho_B, the tensor product of the single-qubit marginals."""
    rho = validate_density_matrix(rho)
    return np.kron(marginal_a(rho), marginal_b(rho))


def classical_correlation_from_states(chi: np.ndarray, pi: np.ndarray) -> float:
    """Trace distance between the closest classical state and the marginal product."""
    chi = validate_density_matrix(chi)
    pi = validate_density_matrix(pi)
    return trace_norm(chi - pi)


def measure_subsystem_a(rho: np.ndarray, direction: MeasurementDirection) -> np.ndarray:
    """Non-selective projective measurement of the first qubit along a direction."""
    rho = validate_density_matrix(rho)
    out = np.zeros((4, 4), dtype=complex)
    for projector in direction.projectors():
        op = np.kron(projector, IDENTITY_2)
        out += op @ rho @ op
    return out


def discord_measurement_sweep(
    rho: np.ndarray,
    coarse_points: int = DEFAULT_COARSE_POINTS,
    refinement_levels: int = DEFAULT_REFINEMENT_LEVELS,
) -> SweepResult:
    """Minimize tr|rho - M(rho, n)| over measurement directions by brute force.

    A Fibonacci lattice (seeded with the three coordinate axes, where the
    minimum of any Bell-diagonal state lives) covers the sphere, then the
    cap around the incumbent is resampled at 10x the local density while
    its radius shrinks by 0.3 per level. Fully deterministic.
    """
    rho = validate_density_matrix(rho)
    if coarse_points < 500:
        raise ValueError(f"coarse_points must be at least 500, got {coarse_points}")
    if refinement_levels < 0:
        raise ValueError(f"refinement_levels must be nonnegative, got {refinement_levels}")

    axes = np.eye(3)
    dirs = np.vstack([axes, fibonacci_sphere(coarse_points)])
    values = _kernels.measurement_residual_norms(rho, dirs)
    best = int(np.argmin(values))
    best_value = float(values[best])
    best_dir = dirs[best]
    evaluated = len(dirs)

    spacing = math.sqrt(4 * math.pi / coarse_points)
    base_density = coarse_points / (4 * math.pi)
    cap_radius = 2 * spacing
    for level in range(1, refinement_levels + 1):
        density = base_density * _DENSITY_GROWTH**level
        cap_area = 2 * math.pi * (1 - math.cos(cap_radius))
        count = max(_MIN_CAP_POINTS, math.ceil(density * cap_area))
        cap = spherical_cap_points(best_dir, cap_radius, count)
        values = _kernels.measurement_residual_norms(rho, cap)
        evaluated += count
        local_best = int(np.argmin(values))
        if values[local_best] < best_value:
            best_value = float(values[local_best])
            best_dir = cap[local_best]
        cap_radius *= _CAP_SHRINK

    return SweepResult(
        minimum=best_value,
        argmin=MeasurementDirection.from_vector(best_dir),
        grid_points=evaluated,
        refinement_levels=refinement_levels,
    )


def fibonacci_sphere(count: int) -> np.ndarray:
    """Quasi-uniform lattice of `count` unit vectors on the sphere."""
    i = np.arange(count)
    z = 1 - 2 * (i + 0.5) / count
    radius = np.sqrt(1 - z * z)
    phi = i * GOLDEN_ANGLE
    return np.column_stack([radius * np.cos(phi), radius * np.sin(phi), z])


def spherical_cap_points(center: np.ndarray, radius: float, count: int) -> np.ndarray:
    """Fibonacci-style spiral filling the cap of angular `radius` around `center`."""
    i = np.arange(count)
    z = 1 - (1 - math.cos(radius)) * (i + 0.5) / count
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    phi = i * GOLDEN_ANGLE
    local = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    u, v = _orthonormal_complement(np.asarray(center, dtype=float))
    frame = np.column_stack([u, v, center])
    return local @ frame.T


def _orthonormal_complement(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0])
    if abs(axis[0]) > 0.9:
        helper = np.array([0.0, 1.0, 0.0])
    u = np.cross(axis, helper)
    u /= np.linalg.norm(u)
    return u, np.cross(axis, u)
