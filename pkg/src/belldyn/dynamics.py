"""Correlation dynamics: trajectories, sudden changes, pointer-basis emergence.

Under both channels |c1(t)| and |c2(t)| share one decay rate and never
cross, so the only possible crossings are |c3(t)| against each of them.
Each such pair crosses at most once (the magnitude ratios are monotone in
t), which caps the sudden changes of the discord at two and of the
classical correlation at one.

A sudden change is an axis-identity switch of a sorted-correlation role:
the discord changes when the intermediate axis switches, the classical
correlation when the dominant axis switches. Detection scans a sampled
trajectory for sign changes of |c3(t)| - |cj(t)| and then bisects the
closed-form laws, so sampling only seeds the brackets.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .channels import (
    ChannelModel,
    PHASE_DAMPING,
    decoherence_time,
    evolve_bell_diagonal,
)
from .qstate import BellDiagonalParams, TIE_TOL, sort_correlations

BISECTION_RELATIVE_PRECISION = 1e-6


@dataclass(frozen=True)
class Trajectory:
    """Sampled correlation decay with the derived geometric correlations.

    qg_series[k] / cg_series[k] are the intermediate / maximum magnitudes
    of c_series[k]; both are non-increasing along the trajectory.
    """

    times: np.ndarray          # (n,) seconds, strictly increasing
    c_series: np.ndarray       # (n, 3) correlation triples
    qg_series: np.ndarray      # (n,) geometric quantum discord
    cg_series: np.ndarray      # (n,) geometric classical correlation
    model: ChannelModel
    initial: BellDiagonalParams

    def correlations_at(self, index: int) -> BellDiagonalParams:
        return BellDiagonalParams(*self.c_series[index])


@dataclass(frozen=True)
class DoubleChangeConditions:
    """Clauses required for two discord sudden changes at the closed-form times.

    c3_role_ok: |c3| is the minimum magnitude (phase damping) or the
    maximum (amplitude damping). distinct / nonzero: the three magnitudes
    are pairwise distinct and the smallest is nonzero.
    """

    c3_role_ok: bool
    distinct: bool
    nonzero: bool

    @property
    def all_met(self) -> bool:
        return self.c3_role_ok and self.distinct and self.nonzero


@dataclass(frozen=True)
class CriticalPoints:
    t1: float | None
    t2: float | None
    conditions: DoubleChangeConditions


@dataclass(frozen=True)
class TransitionReport:
    """Analytic and detected transition structure of one trajectory."""

    quantum_changes: tuple[float, ...]
    classical_changes: tuple[float, ...]
    pointer_basis_time: float | None
    analytic_t1: float | None
    analytic_t2: float | None
    conditions_met: DoubleChangeConditions


def simulate_trajectory(
    c0: BellDiagonalParams,
    model: ChannelModel,
    t_max: float,
    steps: int,
) -> Trajectory:
    """Sample the closed-form evolution on a uniform grid including 0 and t_max."""
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    times = np.linspace(0.0, t_max, steps)
    c_series = np.empty((steps, 3))
    qg = np.empty(steps)
    cg = np.empty(steps)
    for k, t in enumerate(times):
        c_t = evolve_bell_diagonal(c0, float(t), model)
        c_series[k] = c_t.as_tuple()
        ordered = sort_correlations(c_t)
        qg[k] = ordered.c_zero
        cg[k] = ordered.c_plus
    return Trajectory(times, c_series, qg, cg, model, c0)


def analytic_critical_points(c0: BellDiagonalParams, model: ChannelModel) -> CriticalPoints:
    """Closed-form double-sudden-change times, when the conditions allow them.

    Phase damping: t1 = tau ln(c0/|c3|), t2 = tau ln(c+/|c3|), requiring
    |c3| to be the minimum magnitude. Amplitude damping (gamma = 1/2):
    t1 = 2 tau ln(|c3|/c0), t2 = 2 tau ln(|c3|/c-), requiring |c3| to be
    the maximum. Both need pairwise distinct, nonzero magnitudes. Absent
    times are reported as None together with the failed clause flags.
    """
    ordered = sort_correlations(c0)
    tau = decoherence_time(model.t_a, model.t_b)
    magnitude_c3 = abs(c0.c3)
    distinct = (
        ordered.c_plus - ordered.c_zero > TIE_TOL
        and ordered.c_zero - ordered.c_minus > TIE_TOL
    )
    nonzero = ordered.c_minus > 0.0
    if model.kind == PHASE_DAMPING:
        c3_role_ok = ordered.axis_minus == 3
    else:
        c3_role_ok = ordered.axis_plus == 3
    conditions = DoubleChangeConditions(c3_role_ok, distinct, nonzero)
    if not conditions.all_met:
        return CriticalPoints(None, None, conditions)
    if model.kind == PHASE_DAMPING:
        t1 = tau * math.log(ordered.c_zero / magnitude_c3)
        t2 = tau * math.log(ordered.c_plus / magnitude_c3)
    else:
        t1 = 2 * tau * math.log(magnitude_c3 / ordered.c_zero)
        t2 = 2 * tau * math.log(magnitude_c3 / ordered.c_minus)
    return CriticalPoints(t1, t2, conditions)


def classical_sudden_change_time(c0: BellDiagonalParams, model: ChannelModel) -> float | None:
    """Time of the single sudden change of the classical correlation, if any.

    Phase damping: tau ln(c+/|c3|) iff c+ > |c3| != 0. Amplitude damping:
    2 tau ln(|c3|/c0) iff |c3| > c0 != 0.
    """
    ordered = sort_correlations(c0)
    tau = decoherence_time(model.t_a, model.t_b)
    magnitude_c3 = abs(c0.c3)
    if model.kind == PHASE_DAMPING:
        if ordered.c_plus > magnitude_c3 > 0.0:
            return tau * math.log(ordered.c_plus / magnitude_c3)
        return None
    if magnitude_c3 > ordered.c_zero > 0.0:
        return 2 * tau * math.log(magnitude_c3 / ordered.c_zero)
    return None


def pointer_basis_time(c0: BellDiagonalParams, model: ChannelModel) -> float | None:
    """Instant after which the classical correlation stays constant.

    Only phase damping freezes the classical correlation in finite time
    (it saturates at |c3|); under amplitude damping every magnitude keeps
    decaying, so the result is None there and for c3 = 0.
    """
    if model.kind != PHASE_DAMPING or c0.c3 == 0.0:
        return None
    ordered = sort_correlations(c0)
    magnitude_c3 = abs(c0.c3)
    if ordered.c_plus == magnitude_c3:
        return 0.0
    tau = decoherence_time(model.t_a, model.t_b)
    return tau * math.log(ordered.c_plus / magnitude_c3)


def detect_sudden_changes(traj: Trajectory) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Locate the sudden changes of the discord and the classical correlation.

    For each axis j in {1, 2}, a sign change of g_j(t) = |c3(t)| - |cj(t)|
    between adjacent samples brackets the (unique) crossing, which is then
    bisected on the closed-form laws. A crossing switches the dominant
    axis too (classical sudden change) exactly when the remaining
    magnitude lies below the crossing value. Warns when one sampling
    interval hides two crossings.
    """
    quantum: list[float] = []
    classical: list[float] = []
    crossings_per_interval: dict[int, int] = {}
    for partner_axis in (1, 2):
        bracket = _crossing_bracket(traj, partner_axis)
        if bracket is None:
            continue
        index, lo, hi = bracket
        crossings_per_interval[index] = crossings_per_interval.get(index, 0) + 1
        t_star = _bisect_crossing(traj.initial, traj.model, partner_axis, lo, hi)
        c_star = evolve_bell_diagonal(traj.initial, t_star, traj.model)
        crossing_value = abs(c_star.as_tuple()[partner_axis - 1])
        other_axis = 2 if partner_axis == 1 else 1
        other_value = abs(c_star.as_tuple()[other_axis - 1])
        quantum.append(t_star)
        if abs(other_value - crossing_value) <= TIE_TOL:
            warnings.warn(
                f"triple near-degeneracy at crossing t={t_star:.6g}; "
                "classifying as a discord change only",
                stacklevel=2,
            )
        elif other_value < crossing_value:
            classical.append(t_star)
    if any(count > 1 for count in crossings_per_interval.values()):
        warnings.warn(
            "two correlation crossings fall inside one sampling interval; "
            "increase the trajectory resolution",
            stacklevel=2,
        )
    return tuple(sorted(quantum)), tuple(sorted(classical))


def build_transition_report(traj: Trajectory) -> TransitionReport:
    """Combine detected and analytic transition data for one trajectory."""
    quantum, classical = detect_sudden_changes(traj)
    points = analytic_critical_points(traj.initial, traj.model)
    return TransitionReport(
        quantum_changes=quantum,
        classical_changes=classical,
        pointer_basis_time=pointer_basis_time(traj.initial, traj.model),
        analytic_t1=points.t1,
        analytic_t2=points.t2,
        conditions_met=points.conditions,
    )


def _magnitude_gap(
    c0: BellDiagonalParams, model: ChannelModel, partner_axis: int, t: float
) -> float:
    c_t = evolve_bell_diagonal(c0, t, model)
    return abs(c_t.c3) - abs(c_t.as_tuple()[partner_axis - 1])


def _crossing_bracket(
    traj: Trajectory, partner_axis: int
) -> tuple[int, float, float] | None:
    """First sampling interval over which |c3|-|cj| strictly changes sign."""
    gaps = np.abs(traj.c_series[:, 2]) - np.abs(traj.c_series[:, partner_axis - 1])
    signs = np.sign(gaps)
    for k in range(len(signs) - 1):
        if signs[k] != 0 and signs[k + 1] != 0 and signs[k] != signs[k + 1]:
            return k, float(traj.times[k]), float(traj.times[k + 1])
        if signs[k + 1] == 0 and 0 < k + 1 < len(signs) - 1 and signs[k] != 0:
            # exact zero at an interior sample counts when the sign flips across it
            if signs[k + 2] != 0 and signs[k + 2] != signs[k]:
                return k, float(traj.times[k]), float(traj.times[k + 2])
    return None


def _bisect_crossing(
    c0: BellDiagonalParams,
    model: ChannelModel,
    partner_axis: int,
    lo: float,
    hi: float,
) -> float:
    gap_lo = _magnitude_gap(c0, model, partner_axis, lo)
    while hi - lo > BISECTION_RELATIVE_PRECISION * max(hi, 1e-30):
        mid = 0.5 * (lo + hi)
        gap_mid = _magnitude_gap(c0, model, partner_axis, mid)
        if gap_mid == 0.0:
            return mid
        if (gap_mid > 0) == (gap_lo > 0):
            lo, gap_lo = mid, gap_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
