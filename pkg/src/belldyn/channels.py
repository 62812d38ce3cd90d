"""Local decoherence channels: phase damping and generalized amplitude damping.

Channels act independently on each qubit in the operator-sum representation

    eps(rho) = sum_ij (Ei_A x Ej_B) rho (Ei_A x Ej_B)^dag

with the decoherence probability of qubit s tied to time by
p_s = 1 - exp(-t / T_s).  Both channels preserve the Bell-diagonal family
(GAD only at gamma = 1/2), where the correlation functions decay as

    PD:   c1(t) = c1 e^(-t/tau),    c2(t) = c2 e^(-t/tau),    c3(t) = c3
    GAD:  c1(t) = c1 e^(-t/2tau),   c2(t) = c2 e^(-t/2tau),   c3(t) = c3 e^(-t/tau)

with the decoherence time tau = T_A T_B / (T_A + T_B).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import (
    BellDiagonalParams,
    IDENTITY_2,
    SIGMA_Z,
    validate_density_matrix,
)

KRAUS_COMPLETENESS_TOL = 1e-10

PHASE_DAMPING = "pd"
AMPLITUDE_DAMPING = "gad"
CHANNEL_KINDS = (PHASE_DAMPING, AMPLITUDE_DAMPING)


@dataclass(frozen=True)
class KrausSet:
    """A set of 2x2 Kraus operators forming a trace-preserving channel."""

    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        object.__setattr__(self, "operators", ops)
        _check_completeness(ops)


def _check_completeness(operators: tuple[np.ndarray, ...]) -> None:
    for op in operators:
        if op.shape != (2, 2):
            raise ValueError(f"Kraus operators must be 2x2, got shape {op.shape}")
    total = sum(op.conj().T @ op for op in operators)
    defect = np.abs(total - IDENTITY_2).max()
    if defect > KRAUS_COMPLETENESS_TOL:
        raise ValueError(f"Kraus set is not trace preserving (defect {defect:.3e})")


@dataclass(frozen=True)
class ChannelModel:
    """Channel kind plus per-qubit relaxation times (seconds).

    gamma is the thermal mixing parameter of the generalized amplitude
    damping channel; only gamma = 1/2 keeps Bell-diagonal states
    Bell-diagonal, which the closed-form evolution relies on.
    """

    kind: str
    t_a: float
    t_b: float
    gamma: float = field(default=0.5)

    def __post_init__(self) -> None:
        if self.kind not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}, expected one of {CHANNEL_KINDS}")
        if self.t_a <= 0 or self.t_b <= 0:
            raise ValueError(f"relaxation times must be positive, got ({self.t_a}, {self.t_b})")
        if not 0 <= self.gamma <= 1:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")


def pd_kraus(p: float) -> KrausSet:
    """Phase-damping Kraus operators {sqrt(1 - p/2) I, sqrt(p/2) sz}."""
    _check_probability(p, "p")
    return KrausSet((
        math.sqrt(1 - p / 2) * IDENTITY_2,
        math.sqrt(p / 2) * SIGMA_Z,
    ))


def gad_kraus(p: float, gamma: float = 0.5) -> KrausSet:
    """Generalized-amplitude-damping Kraus operators.

    E0 = sqrt(g) [[1, 0], [0, sqrt(1-p)]]     E1 = sqrt(g) [[0, sqrt(p)], [0, 0]]
    E2 = sqrt(1-g) [[sqrt(1-p), 0], [0, 1]]   E3 = sqrt(1-g) [[0, 0], [sqrt(p), 0]]
    """
    _check_probability(p, "p")
    _check_probability(gamma, "gamma")
    root_g = math.sqrt(gamma)
    root_1g = math.sqrt(1 - gamma)
    root_p = math.sqrt(p)
    root_1p = math.sqrt(1 - p)
    return KrausSet((
        root_g * np.array([[1, 0], [0, root_1p]], dtype=complex),
        root_g * np.array([[0, root_p], [0, 0]], dtype=complex),
        root_1g * np.array([[root_1p, 0], [0, 1]], dtype=complex),
        root_1g * np.array([[0, 0], [root_p, 0]], dtype=complex),
    ))


def apply_local_channels(rho: np.ndarray, ks_a: KrausSet, ks_b: KrausSet) -> np.ndarray:
    """Apply independent single-qubit channels to each side of a two-qubit state."""
    rho = validate_density_matrix(rho)
    _check_completeness(ks_a.operators)
    _check_completeness(ks_b.operators)
    out = np.zeros((4, 4), dtype=complex)
    for ea in ks_a.operators:
        for eb in ks_b.operators:
            op = np.kron(ea, eb)
            out += op @ rho @ op.conj().T
    return out


def decoherence_time(t_a: float, t_b: float) -> float:
    """Combined decay scale T_A T_B / (T_A + T_B)."""
    if t_a <= 0 or t_b <= 0:
        raise ValueError(f"relaxation times must be positive, got ({t_a}, {t_b})")
    return t_a * t_b / (t_a + t_b)


def damping_probability(t: float, relaxation_time: float) -> float:
    """Decoherence probability p = 1 - exp(-t/T) after time t."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return 1 - math.exp(-t / relaxation_time)


def channel_kraus_at(model: ChannelModel, t: float) -> tuple[KrausSet, KrausSet]:
    """Per-qubit Kraus sets of the model evaluated at time t."""
    p_a = damping_probability(t, model.t_a)
    p_b = damping_probability(t, model.t_b)
    if model.kind == PHASE_DAMPING:
        return pd_kraus(p_a), pd_kraus(p_b)
    return gad_kraus(p_a, model.gamma), gad_kraus(p_b, model.gamma)


def evolve_bell_diagonal(c: BellDiagonalParams, t: float, model: ChannelModel) -> BellDiagonalParams:
    """Closed-form correlation decay after time t under the model's channel.

    Raises for t < 0 and for GAD with gamma != 1/2, where the state leaves
    the Bell-diagonal family and the closed form does not apply (use
    apply_local_channels on the full matrix instead).
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    tau = decoherence_time(model.t_a, model.t_b)
    if model.kind == PHASE_DAMPING:
        transverse = math.exp(-t / tau)
        return BellDiagonalParams(c.c1 * transverse, c.c2 * transverse, c.c3)
    if model.gamma != 0.5:
        raise ValueError(
            "closed-form evolution for generalized amplitude damping requires gamma = 1/2"
        )
    transverse = math.exp(-t / (2 * tau))
    return BellDiagonalParams(c.c1 * transverse, c.c2 * transverse, c.c3 * math.exp(-t / tau))


def _check_probability(value: float, name: str) -> None:
    if not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
