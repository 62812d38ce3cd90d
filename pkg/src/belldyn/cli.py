"""Experiment configuration, presets, CSV/report emission and the command line.

Two presets mirror the NMR parameter sets this package is built around: a
phase-damping run (chloroform-pd) and a generalized-amplitude-damping run
(sodium-gad). Output is a plot-ready CSV plus a human-readable transition
report; both are fully deterministic, including the optional Gaussian
scatter, which is driven by an explicit seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channels import ChannelModel, decoherence_time
from .correlations import (
    discord_measurement_sweep,
    geometric_quantum_discord,
)
from .dynamics import (
    TransitionReport,
    Trajectory,
    build_transition_report,
    classical_sudden_change_time,
    simulate_trajectory,
)
from .qstate import BellDiagonalParams, bell_diagonal_to_density, sort_correlations

CSV_HEADER = "t,c1,c2,c3,c_minus,c_zero,c_plus,qg,cg"

#: Sign patterns whose dot product with (c1, c2, c3) gives 4*eigenvalue - 1.
_TETRAHEDRON_SIGNS = ((1, -1, 1), (-1, 1, 1), (1, 1, -1), (-1, -1, -1))


@dataclass(frozen=True)
class ExperimentConfig:
    channel: str
    c1: float
    c2: float
    c3: float
    t_a: float
    t_b: float
    t_max: float
    steps: int
    gamma: float = 0.5
    noise_sigma: float = 0.0
    seed: int = 0
    output_path: str = "trajectory.csv"

    def initial_state(self) -> BellDiagonalParams:
        return BellDiagonalParams(self.c1, self.c2, self.c3)

    def channel_model(self) -> ChannelModel:
        return ChannelModel(self.channel, self.t_a, self.t_b, self.gamma)

    def validate(self) -> None:
        self.initial_state()
        self.channel_model()
        if self.t_max <= 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be nonnegative, got {self.noise_sigma}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")


PRESETS = {
    "chloroform-pd": ExperimentConfig(
        channel="pd",
        c1=0.49,
        c2=0.20,
        c3=0.067,
        t_a=0.27,
        t_b=0.15,
        t_max=0.5,
        steps=501,
        output_path="chloroform-pd.csv",
    ),
    "sodium-gad": ExperimentConfig(
        channel="gad",
        c1=0.08,
        c2=0.14,
        c3=0.16,
        t_a=0.012,
        t_b=0.012,
        gamma=0.5,
        t_max=0.03,
        steps=601,
        output_path="sodium-gad.csv",
    ),
}

_CONFIG_FIELDS = {f.name for f in dataclasses.fields(ExperimentConfig)}
_REQUIRED_FIELDS = {
    f.name
    for f in dataclasses.fields(ExperimentConfig)
    if f.default is dataclasses.MISSING
}


def load_config(source: str | Path) -> ExperimentConfig:
    """Resolve a preset name or parse a flat key-value JSON config file."""
    if isinstance(source, str) and source in PRESETS:
        config = PRESETS[source]
        config.validate()
        return config
    path = Path(source)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    unknown = set(raw) - _CONFIG_FIELDS
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = _REQUIRED_FIELDS - set(raw)
    if missing:
        raise ValueError(f"missing config keys: {', '.join(sorted(missing))}")
    config = ExperimentConfig(**raw)
    config.validate()
    return config


def perturb_correlations(
    c: BellDiagonalParams, sigma: float, seed: int
) -> BellDiagonalParams:
    """Add seeded Gaussian noise to each correlation, clamped back to physical.

    Clamping scales the whole correlation vector by the largest factor
    <= 1 that restores positivity, preserving its direction. sigma = 0
    returns the input unchanged.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    if sigma == 0:
        return c
    rng = np.random.default_rng(seed)
    return _perturb_with_rng(c, sigma, rng)


def _perturb_with_rng(
    c: BellDiagonalParams, sigma: float, rng: np.random.Generator
) -> BellDiagonalParams:
    noisy = np.asarray(c.as_tuple()) + rng.normal(0.0, sigma, size=3)
    scale = 1.0
    for signs in _TETRAHEDRON_SIGNS:
        projection = float(np.dot(signs, noisy))
        if projection < -1.0:
            scale = min(scale, -1.0 / projection)
    return BellDiagonalParams(*(scale * noisy))


def run_experiment(config: ExperimentConfig) -> tuple[Path, TransitionReport]:
    """Simulate a configured run, write its CSV, and report the transitions.

    The CSV rows carry the perturbed correlations when noise_sigma > 0
    (one draw per sample, emulating per-point measurement scatter); the
    transition report always reflects the noiseless closed-form dynamics.
    """
    config.validate()
    traj = simulate_trajectory(
        config.initial_state(), config.channel_model(), config.t_max, config.steps
    )
    report = build_transition_report(traj)
    path = Path(config.output_path)
    path.write_bytes(trajectory_csv(traj, config).encode("ascii"))
    return path, report


def trajectory_csv(traj: Trajectory, config: ExperimentConfig) -> str:
    """Render the sampled trajectory as CSV text (9 significant digits)."""
    rng = np.random.default_rng(config.seed)
    lines = [CSV_HEADER]
    for k, t in enumerate(traj.times):
        c = traj.correlations_at(k)
        if config.noise_sigma > 0:
            c = _perturb_with_rng(c, config.noise_sigma, rng)
        ordered = sort_correlations(c)
        values = (
            float(t),
            c.c1,
            c.c2,
            c.c3,
            ordered.c_minus,
            ordered.c_zero,
            ordered.c_plus,
            ordered.c_zero,
            ordered.c_plus,
        )
        lines.append(",".join(format(v, ".9g") for v in values))
    return "\n".join(lines) + "\n"


def format_transition_report(config: ExperimentConfig, report: TransitionReport) -> str:
    """Human-readable summary of the analytic and detected transition times."""
    tau = decoherence_time(config.t_a, config.t_b)
    conditions = report.conditions_met
    flags = ", ".join(
        f"{name}: {'yes' if value else 'no'}"
        for name, value in (
            ("c3 role", conditions.c3_role_ok),
            ("distinct", conditions.distinct),
            ("nonzero", conditions.nonzero),
        )
    )
    classical_time = classical_sudden_change_time(
        config.initial_state(), config.channel_model()
    )
    lines = [
        f"channel: {config.channel}",
        f"initial correlations: c1={_fmt(config.c1)} c2={_fmt(config.c2)} c3={_fmt(config.c3)}",
        f"relaxation times: T_A={_fmt(config.t_a)} s, T_B={_fmt(config.t_b)} s",
        f"decoherence time tau_D: {_fmt(tau)} s",
        f"critical point t1: {_fmt_time(report.analytic_t1)}",
        f"critical point t2: {_fmt_time(report.analytic_t2)}",
        f"double-change conditions: {flags}",
        f"classical sudden change: {_fmt_time(classical_time)}",
        f"pointer basis time: {_fmt_time(report.pointer_basis_time)}",
        f"detected quantum changes: {_fmt_times(report.quantum_changes)}",
        f"detected classical changes: {_fmt_times(report.classical_changes)}",
    ]
    return "\n".join(lines)


def _fmt(value: float) -> str:
    return format(value, ".9g")


def _fmt_time(value: float | None) -> str:
    return "none" if value is None else f"{_fmt(value)} s"


def _fmt_times(values: tuple[float, ...]) -> str:
    return "none" if not values else ", ".join(_fmt(v) + " s" for v in values)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="belldyn",
        description="Bell-diagonal decoherence dynamics and geometric correlations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser(
        "simulate", help="run a trajectory, write its CSV, print the transition report"
    )
    _add_source_arguments(simulate)
    simulate.add_argument("--out", help="output CSV path (overrides the config)")
    simulate.add_argument(
        "--noise-sigma", type=float, help="per-sample Gaussian scatter (overrides the config)"
    )
    simulate.add_argument("--seed", type=int, help="noise seed (overrides the config)")
    simulate.set_defaults(func=_cmd_simulate)

    critical = sub.add_parser(
        "critical-points", help="print the analytic transition summary without simulating"
    )
    _add_source_arguments(critical)
    critical.set_defaults(func=_cmd_critical_points)

    oracle = sub.add_parser(
        "sweep-oracle", help="brute-force discord minimization over measurement directions"
    )
    oracle.add_argument("--c1", type=float, required=True)
    oracle.add_argument("--c2", type=float, required=True)
    oracle.add_argument("--c3", type=float, required=True)
    oracle.add_argument("--points", type=int, default=2000, help="coarse grid size")
    oracle.add_argument("--levels", type=int, default=3, help="refinement levels")
    oracle.set_defaults(func=_cmd_sweep_oracle)
    return parser


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS), help="built-in parameter set")
    source.add_argument("--config", help="path to a JSON config file")


def _load_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return load_config(args.preset if args.preset else args.config)


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_from_args(args)
    overrides = {}
    if args.out is not None:
        overrides["output_path"] = args.out
    if args.noise_sigma is not None:
        overrides["noise_sigma"] = args.noise_sigma
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = dataclasses.replace(config, **overrides)
    path, report = run_experiment(config)
    print(format_transition_report(config, report))
    print(f"trajectory written to {path}")
    return 0


def _cmd_critical_points(args: argparse.Namespace) -> int:
    config = _load_from_args(args)
    traj = simulate_trajectory(
        config.initial_state(), config.channel_model(), config.t_max, config.steps
    )
    print(format_transition_report(config, build_transition_report(traj)))
    return 0


def _cmd_sweep_oracle(args: argparse.Namespace) -> int:
    c = BellDiagonalParams(args.c1, args.c2, args.c3)
    rho = bell_diagonal_to_density(c)
    result = discord_measurement_sweep(rho, args.points, args.levels)
    direction = result.argmin
    print(f"sweep minimum: {_fmt(result.minimum)}")
    print(f"argmin direction: theta={_fmt(direction.theta)} phi={_fmt(direction.phi)}")
    print(f"evaluated directions: {result.grid_points}")
    print(f"closed-form discord: {_fmt(geometric_quantum_discord(c))}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
