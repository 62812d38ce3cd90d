import dataclasses
import json
import math
import warnings

import numpy as np
import pytest

from belldyn.cli import (
    CSV_HEADER,
    ExperimentConfig,
    format_transition_report,
    load_config,
    main,
    perturb_correlations,
    run_experiment,
)
from belldyn.qstate import BellDiagonalParams

MINIMAL_CONFIG = {
    "channel": "pd",
    "c1": 0.3,
    "c2": 0.2,
    "c3": 0.1,
    "t_a": 0.2,
    "t_b": 0.2,
    "t_max": 0.4,
    "steps": 11,
}


class TestLoadConfig:
    def test_chloroform_preset(self):
        config = load_config("chloroform-pd")
        assert (config.c1, config.c2, config.c3) == (0.49, 0.20, 0.067)
        assert config.channel == "pd"
        assert (config.t_max, config.steps) == (0.5, 501)

    def test_sodium_preset(self):
        config = load_config("sodium-gad")
        assert config.t_a == config.t_b == 0.012
        assert config.gamma == 0.5
        assert (config.t_max, config.steps) == (0.03, 601)

    def test_json_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps(MINIMAL_CONFIG))
        config = load_config(path)
        assert config.channel == "pd"
        assert config.noise_sigma == 0.0

    def test_unknown_key_is_an_error(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({**MINIMAL_CONFIG, "relaxation": 1.0}))
        with pytest.raises(ValueError, match="unknown config keys: relaxation"):
            load_config(path)

    def test_missing_key_is_an_error(self, tmp_path):
        partial = {k: v for k, v in MINIMAL_CONFIG.items() if k != "t_b"}
        path = tmp_path / "run.json"
        path.write_text(json.dumps(partial))
        with pytest.raises(ValueError, match="missing config keys: t_b"):
            load_config(path)

    def test_unphysical_correlations_fail_validation(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({**MINIMAL_CONFIG, "c1": 2.0}))
        with pytest.raises(ValueError, match="tetrahedron"):
            load_config(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{not json")
        with pytest.raises(ValueError, match="not valid JSON"):
            load_config(path)


class TestPerturbCorrelations:
    def test_zero_sigma_returns_input(self):
        c = BellDiagonalParams(0.49, 0.20, 0.067)
        assert perturb_correlations(c, 0.0, seed=5) is c

    def test_same_seed_is_bitwise_reproducible(self):
        c = BellDiagonalParams(0.49, 0.20, 0.067)
        a = perturb_correlations(c, 0.01, seed=11)
        b = perturb_correlations(c, 0.01, seed=11)
        assert a.as_tuple() == b.as_tuple()

    def test_noise_is_unbiased(self):
        c = BellDiagonalParams(0.49, 0.20, 0.067)
        sigma = 0.01
        draws = np.array(
            [perturb_correlations(c, sigma, seed=k).as_tuple() for k in range(1000)]
        )
        bound = 3 * sigma / math.sqrt(1000)
        np.testing.assert_allclose(draws.mean(axis=0), c.as_tuple(), atol=bound)

    def test_clamping_keeps_states_physical(self):
        c = BellDiagonalParams(1, -1, 1)  # tetrahedron vertex, any noise may exit
        for seed in range(200):
            perturbed = perturb_correlations(c, 0.2, seed=seed)
            assert min(perturbed.eigenvalues()) >= -1e-12

    def test_rejects_negative_sigma(self):
        with pytest.raises(ValueError, match="nonnegative"):
            perturb_correlations(BellDiagonalParams(0, 0, 0), -0.1, seed=0)


class TestRunExperiment:
    def test_two_step_trajectory_has_two_rows(self, tmp_path):
        config = ExperimentConfig(
            **MINIMAL_CONFIG, output_path=str(tmp_path / "two.csv")
        )
        config = type(config)(**{**config.__dict__, "steps": 2})
        path, _ = run_experiment(config)
        lines = path.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 3
        assert lines[1].startswith("0,")
        assert lines[2].startswith("0.4,")

    def test_runs_are_byte_identical(self, tmp_path):
        config = ExperimentConfig(
            **MINIMAL_CONFIG, noise_sigma=0.02, seed=7,
            output_path=str(tmp_path / "noisy.csv"),
        )
        path, _ = run_experiment(config)
        first = path.read_bytes()
        path, _ = run_experiment(config)
        assert path.read_bytes() == first

    def test_csv_round_trip(self, tmp_path):
        config = ExperimentConfig(**MINIMAL_CONFIG, output_path=str(tmp_path / "t.csv"))
        path, _ = run_experiment(config)
        parsed = np.genfromtxt(path, delimiter=",", names=True)
        from belldyn.dynamics import simulate_trajectory

        traj = simulate_trajectory(
            config.initial_state(), config.channel_model(), config.t_max, config.steps
        )
        np.testing.assert_allclose(parsed["t"], traj.times, atol=1e-9)
        np.testing.assert_allclose(parsed["c1"], traj.c_series[:, 0], atol=1e-9)
        np.testing.assert_allclose(parsed["qg"], traj.qg_series, atol=1e-9)
        np.testing.assert_allclose(parsed["cg"], traj.cg_series, atol=1e-9)

    def test_report_values_match_library_outputs(self, tmp_path):
        config = load_config("chloroform-pd")
        config = type(config)(**{**config.__dict__, "output_path": str(tmp_path / "c.csv")})
        _, report = run_experiment(config)
        text = format_transition_report(config, report)
        from belldyn.channels import decoherence_time

        tau_line = next(l for l in text.splitlines() if l.startswith("decoherence time"))
        assert tau_line.split(": ")[1] == format(decoherence_time(0.27, 0.15), ".9g") + " s"
        t1_line = next(l for l in text.splitlines() if l.startswith("critical point t1"))
        assert t1_line.split(": ")[1] == format(report.analytic_t1, ".9g") + " s"


class TestCommandLine:
    def test_simulate_preset(self, tmp_path, capsys):
        out = tmp_path / "chloroform.csv"
        code = main(["simulate", "--preset", "chloroform-pd", "--out", str(out)])
        assert code == 0
        assert out.exists()
        stdout = capsys.readouterr().out
        assert "pointer basis time: 0.19186516 s" in stdout
        assert "critical point t1: 0.105456672 s" in stdout

    def test_simulate_config_file(self, tmp_path, capsys):
        config_path = tmp_path / "run.json"
        config_path.write_text(
            json.dumps({**MINIMAL_CONFIG, "output_path": str(tmp_path / "run.csv")})
        )
        assert main(["simulate", "--config", str(config_path)]) == 0
        assert (tmp_path / "run.csv").exists()

    def test_critical_points_sodium(self, capsys):
        assert main(["critical-points", "--preset", "sodium-gad"]) == 0
        stdout = capsys.readouterr().out
        assert "critical point t1: 0.00160237671 s" in stdout
        assert "critical point t2: 0.00831776617 s" in stdout
        assert "pointer basis time: none" in stdout

    def test_sweep_oracle(self, capsys):
        code = main([
            "sweep-oracle", "--c1", "0.49", "--c2", "0.2", "--c3", "0.067",
            "--points", "600", "--levels", "2",
        ])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "sweep minimum: 0.2" in stdout
        assert "closed-form discord: 0.2" in stdout

    def test_validation_error_exits_2(self, capsys):
        code = main(["sweep-oracle", "--c1", "2", "--c2", "0", "--c3", "0"])
        assert code == 2
        assert "tetrahedron" in capsys.readouterr().err

    def test_unwritable_output_exits_3(self, tmp_path, capsys):
        out = tmp_path / "missing" / "dir" / "file.csv"
        code = main(["simulate", "--preset", "chloroform-pd", "--out", str(out)])
        assert code == 3

    def test_bad_config_file_exits_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**MINIMAL_CONFIG, "c1": 5.0}))
        assert main(["simulate", "--config", str(path)]) == 2
