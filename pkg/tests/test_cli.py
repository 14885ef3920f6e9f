"""Tests for the aqc-cavity command line."""

import json
from pathlib import Path
from typing import Any

import pytest

from aqc_cavity.cli.main import WORKERS_ENV, main, resolve_workers
from aqc_cavity.exceptions import ConfigError

from .conftest import EC_CLAUSES, PRESETS


def write_config(tmp_path: Path, **sections: Any) -> Path:
    document: dict[str, Any] = {
        "model": {"kind": "TLS", "b_x": 1.0, "j0": 0.1},
        "cavity": {"delta_c": -0.05, "kappa": 0.1, "g": 0.075},
        "output_dir": str(tmp_path / "out"),
    }
    document.update(sections)
    path = tmp_path / "run.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def read_json(path: Path) -> Any:
    return json.loads(path.read_text(encoding="utf-8"))


class TestExactCoverCommand:
    """Tests for ``aqc-cavity ec``."""

    def test_clause_text(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the unique solution and the gap are printed."""
        assert main(["ec", "--clauses", EC_CLAUSES]) == 0
        out = capsys.readouterr().out
        assert "solutions: 100001" in out
        assert "violation histogram:" in out
        assert "gap:" in out

    def test_writes_outputs(self, tmp_path: Path) -> None:
        """Test instance.txt and ec.json under --out."""
        assert main(["ec", "--clauses", EC_CLAUSES, "--out", str(tmp_path)]) == 0
        summary = read_json(tmp_path / "ec.json")
        assert summary["unique"] is True
        assert summary["solutions"] == ["100001"]
        assert (tmp_path / "instance.txt").is_file()

    def test_shipped_instance(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the shipped six-qubit instance loads by name."""
        assert main(["ec", "--instance", "exact-cover-6.txt"]) == 0
        assert "solutions: 100001" in capsys.readouterr().out

    def test_missing_instance_file(self, tmp_path: Path) -> None:
        """Test that an unknown instance path exits with 1."""
        assert main(["ec", "--instance", str(tmp_path / "none.txt")]) == 1

    def test_unsatisfiable_is_reported(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that an unsatisfiable instance is not an error."""
        assert main(["ec", "--clauses", "1 2 3; 1 2 4; 1 3 4; 2 3 4"]) == 0
        assert "unsatisfiable" in capsys.readouterr().out

    def test_duplicate_clause(self) -> None:
        """Test that malformed clause text exits with 1."""
        assert main(["ec", "--clauses", "1 2 3; 1 2 3"]) == 1

    def test_generation_is_deterministic(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the same seed prints the same instance."""
        argv = ["ec", "--generate", "6", "5", "--seed", "4", "--unique"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == first


class TestAnalyzeCommand:
    """Tests for ``aqc-cavity analyze``."""

    def test_outputs(self, tmp_path: Path) -> None:
        """Test the three analysis files and their CSV line endings."""
        config = write_config(tmp_path, analyze={"n_points": 21, "n_levels": 2})
        assert main(["analyze", "--config", str(config)]) == 0
        out = tmp_path / "out"
        observables = (out / "observables.csv").read_bytes()
        assert observables.startswith(b"b_eff,x_ss,x_ss_prime,gap\r\n")
        assert observables.count(b"\r\n") == 22
        assert (out / "spectrum.csv").read_bytes().startswith(b"b_eff,E0,E1\r\n")
        report = read_json(out / "feasibility.json")
        assert report["gap"]["b_gap"] == pytest.approx(0.5, abs=1e-6)

    def test_out_override(self, tmp_path: Path) -> None:
        """Test that --out replaces the configured directory."""
        config = write_config(tmp_path, analyze={"n_points": 5})
        target = tmp_path / "elsewhere"
        assert main(["analyze", "--config", str(config), "--out", str(target)]) == 0
        assert (target / "feasibility.json").is_file()
        assert not (tmp_path / "out").exists()


class TestStationaryCommand:
    """Tests for ``aqc-cavity stationary``."""

    def test_bifurcations(self, tmp_path: Path) -> None:
        """Test the two TLS bifurcation points."""
        config = write_config(tmp_path, sweep={"lo": 0.25, "hi": 0.4, "n": 4})
        assert main(["stationary", "--config", str(config)]) == 0
        document = read_json(tmp_path / "out" / "bifurcations.json")
        assert document["control"] == "epsilon"
        assert document["alpha_over_g2"] == pytest.approx(8.889, abs=1e-3)
        assert len(document["points"]) == 2

    def test_uncoupled(self, tmp_path: Path) -> None:
        """Test that g = 0 gives one stable row per value and no bifurcations."""
        config = write_config(
            tmp_path,
            cavity={"delta_c": -0.05, "kappa": 0.1, "g": 0.0},
            sweep={"lo": 0.1, "hi": 0.5, "n": 3},
        )
        assert main(["stationary", "--config", str(config)]) == 0
        document = read_json(tmp_path / "out" / "bifurcations.json")
        assert document["points"] == []
        assert document["alpha_over_g2"] is None
        lines = (tmp_path / "out" / "sweep.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == 4

    def test_empty_rows_exit_two(self, tmp_path: Path) -> None:
        """Test that a drive with no stationary point exits with 2 and a manifest."""
        config = write_config(tmp_path, sweep={"values": [100.0]}, emit=["sweep"])
        assert main(["stationary", "--config", str(config)]) == 2
        manifest = read_json(tmp_path / "out" / "manifest.json")
        assert manifest["status"] == "empty"
        assert manifest["files"] == ["sweep.csv"]

    def test_missing_sweep(self, tmp_path: Path) -> None:
        """Test that stationary needs a sweep section."""
        assert main(["stationary", "--config", str(write_config(tmp_path))]) == 1

    def test_workers_do_not_change_output(self, tmp_path: Path) -> None:
        """Test byte-identical sweep files for one and two workers."""
        outputs = []
        for workers in ("1", "2"):
            out = tmp_path / f"w{workers}"
            config = write_config(tmp_path, sweep={"lo": 0.25, "hi": 0.42, "n": 12})
            argv = ["stationary", "--config", str(config), "--out", str(out), "--workers", workers]
            assert main(argv) == 0
            outputs.append((out / "sweep.csv").read_bytes())
        assert outputs[0] == outputs[1]


class TestProtocolCommand:
    """Tests for ``aqc-cavity protocol``."""

    def test_single_run(self, tmp_path: Path) -> None:
        """Test trajectory.csv and a single protocol.json record."""
        config = write_config(
            tmp_path,
            schedule={"eps_mid": 0.2, "switch_threshold": 0.45, "dt": 0.05, "t_max": 20.0},
        )
        assert main(["protocol", "--config", str(config)]) == 0
        record = read_json(tmp_path / "out" / "protocol.json")
        assert record["eps_mid"] == 0.2
        header = (tmp_path / "out" / "trajectory.csv").read_text(encoding="utf-8").splitlines()[0]
        assert header == "t,a_re,a_im,x_a,X,b_eff,p_exc"

    def test_missing_schedule(self, tmp_path: Path) -> None:
        """Test that protocol needs a schedule section."""
        assert main(["protocol", "--config", str(write_config(tmp_path))]) == 1

    def test_missing_config_file(self, tmp_path: Path) -> None:
        """Test that an unreadable config exits with 1."""
        assert main(["protocol", "--config", str(tmp_path / "missing.json")]) == 1


class TestPresets:
    """Tests for ``aqc-cavity preset``."""

    def test_list(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the preset listing."""
        assert main(["preset", "--list"]) == 0
        assert capsys.readouterr().out.split() == PRESETS

    def test_missing_name(self) -> None:
        """Test that a preset name is required without --list."""
        assert main(["preset"]) == 1

    def test_unknown_name(self) -> None:
        """Test that an unknown preset exits with 1."""
        assert main(["preset", "missing-preset"]) == 1


class TestWorkers:
    """Tests for worker-count resolution."""

    def test_default(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test one worker when neither flag nor variable is set."""
        monkeypatch.delenv(WORKERS_ENV, raising=False)
        assert resolve_workers(None) == 1

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the environment variable and the flag precedence."""
        monkeypatch.setenv(WORKERS_ENV, "3")
        assert resolve_workers(None) == 3
        assert resolve_workers(2) == 2

    def test_invalid_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a non-integer variable is a configuration error."""
        monkeypatch.setenv(WORKERS_ENV, "many")
        with pytest.raises(ConfigError, match=WORKERS_ENV):
            resolve_workers(None)

    def test_invalid_environment_exit_code(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Test that a bad worker variable exits with 1."""
        monkeypatch.setenv(WORKERS_ENV, "many")
        config = write_config(tmp_path, analyze={"n_points": 5})
        assert main(["analyze", "--config", str(config)]) == 1

    def test_non_positive(self) -> None:
        """Test that zero workers are rejected."""
        with pytest.raises(ConfigError, match=">= 1"):
            resolve_workers(0)
