"""Bell-diagonal two-qubit decoherence dynamics and trace-norm geometric correlations.

The package evolves Bell-diagonal states under local phase-damping and
generalized-amplitude-damping noise, computes the trace-norm geometric
quantum discord and classical correlation along the way, and locates
their sudden changes and the pointer-basis emergence time, both in
closed form and by independent numerical routes.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .channels import (
    ChannelModel,
    KrausSet,
    apply_local_channels,
    channel_kraus_at,
    decoherence_time,
    evolve_bell_diagonal,
    gad_kraus,
    pd_kraus,
)
from .correlations import (
    MeasurementDirection,
    SweepResult,
    classical_correlation_from_states,
    closest_classical_state,
    discord_measurement_sweep,
    geometric_classical_correlation,
    geometric_quantum_discord,
    measure_subsystem_a,
    product_of_marginals,
)
from .dynamics import (
    CriticalPoints,
    TransitionReport,
    Trajectory,
    analytic_critical_points,
    build_transition_report,
    classical_sudden_change_time,
    detect_sudden_changes,
    pointer_basis_time,
    simulate_trajectory,
)
from .qstate import (
    BellDiagonalParams,
    SortedCorrelations,
    bell_diagonal_to_density,
    density_to_correlations,
    hermitian_eigenvalues,
    sort_correlations,
    trace_norm,
)

__version__ = "0.1.0"

__all__ = [
    "BellDiagonalParams",
    "ChannelModel",
    "CriticalPoints",
    "KERNEL_BACKEND",
    "KrausSet",
    "MeasurementDirection",
    "SortedCorrelations",
    "SweepResult",
    "Trajectory",
    "TransitionReport",
    "analytic_critical_points",
    "apply_local_channels",
    "bell_diagonal_to_density",
    "build_transition_report",
    "channel_kraus_at",
    "classical_correlation_from_states",
    "classical_sudden_change_time",
    "closest_classical_state",
    "decoherence_time",
    "density_to_correlations",
    "detect_sudden_changes",
    "discord_measurement_sweep",
    "evolve_bell_diagonal",
    "gad_kraus",
    "geometric_classical_correlation",
    "geometric_quantum_discord",
    "hermitian_eigenvalues",
    "measure_subsystem_a",
    "pd_kraus",
    "pointer_basis_time",
    "product_of_marginals",
    "simulate_trajectory",
    "sort_correlations",
    "trace_norm",
]
