import json
import math

import pytest

from drivenqubit.cli import EXIT_IO, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, read_config, run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    assert code == EXIT_OK
    return json.loads(out)


def test_tailor_witness_full_turn(capsys):
    out = run_json(capsys, ["tailor", "--target", "witness", "--tau", "6.28318530718", "--omega0", "1",
                            "--gamma", "0.2", "--delta-min", "0.5", "--delta-max", "1.5"])
    assert out["delta_star"] == pytest.approx(0.955, abs=0.005)
    assert out["saturation_ratio"] >= 0.98


def test_tailor_steering_three_quarter_turn(capsys):
    out = run_json(capsys, ["tailor", "--target", "steering", "--tau", "4.71238898038", "--omega0", "1", "--gamma", "0.06"])
    assert out["delta_star"] == pytest.approx(0.1415, abs=1e-4)


def test_extrema(capsys):
    out = run_json(capsys, ["extrema", "--target", "witness", "--tau", str(2 * math.pi), "--omega0", "0",
                            "--gamma", "0.1", "--delta-min", "0", "--delta-max", "1"])
    assert any(abs(e["delta"] - 1 / math.pi) < 1e-9 and e["branch"] == "D1" for e in out["extrema"])


def test_trace_csv(tmp_path, capsys):
    path = tmp_path / "trace.csv"
    assert run(["trace", "--tau-steps", "5", "--format", "csv", "-o", str(path)]) == EXIT_OK
    assert path.read_text().splitlines()[0] == "tau,delta,value,bound"


def test_grid_json_with_overlays(capsys):
    out = run_json(capsys, ["grid", "--tau-steps", "4", "--delta-steps", "3", "--omega0", "0",
                            "--gamma", "0.1", "--overlay-k-min", "0", "--overlay-k-max", "1"])
    assert len(out["values"]) == 4 and len(out["values"][0]) == 3
    assert {o["branch"] for o in out["overlays"]} == {"D1", "D2", "D3"}


def test_byte_identical_output(capsys):
    argv = ["grid", "--tau-steps", "7", "--delta-steps", "7", "--format", "csv"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_verify_small(capsys):
    out = run_json(capsys, ["verify", "--samples", "5", "--seed", "7"])
    assert out["passed"] and out["witness"]["max_deviation"] < 1e-6


def test_verify_failure_exit(capsys):
    # a huge step guarantees the oracle misses the tolerance
    assert run(["verify", "--samples", "3", "--step", "0.5"]) == EXIT_NUMERIC
    assert "deviates" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["tailor", "--tau", "1", "--bogus"],
        ["tailor", "--tau", "0"],
        ["tailor", "--tau", "1", "--gamma", "-0.1"],
        ["tailor"],
        ["grid", "--tau-steps", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_no_maximum_is_numerical_failure(capsys):
    argv = ["tailor", "--target", "steering", "--tau", "1", "--omega0", "0", "--delta-min", "0.1", "--delta-max", "0.2"]
    assert run(argv) == EXIT_NUMERIC


def test_io_error(tmp_path, capsys):
    assert run(["trace", "-o", str(tmp_path / "nope" / "x.json")]) == EXIT_IO
    assert run(["--config", str(tmp_path / "missing.cfg"), "trace"]) == EXIT_IO


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# steering at three quarter turns\ntarget = steering\ntau = 4.71238898038\ngamma = 0.06  # dephasing\nomega0 = 1\n")
    assert read_config(cfg)["gamma"] == "0.06"
    out = run_json(capsys, ["--config", str(cfg), "tailor"])
    assert out["target"] == "steering" and out["gamma"] == 0.06
    out = run_json(capsys, ["--config", str(cfg), "tailor", "--gamma", "0.1"])
    assert out["gamma"] == 0.1


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("gamma 0.1\n")
    assert run(["--config", str(cfg), "trace"]) == EXIT_USAGE


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("DRIVENQUBIT_OUTPUT_DIR", str(tmp_path))
    assert run(["trace", "--tau-steps", "3", "-o", "t.json"]) == EXIT_OK
    assert (tmp_path / "t.json").exists()


@pytest.mark.parametrize("cmd", ["trace", "grid", "extrema", "tailor", "verify"])
def test_help_lists_units(cmd, capsys):
    assert run([cmd, "--help"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "--output" in text
    if cmd != "verify":
        assert "[rad/time]" in text and "[1/time]" in text
