import json

import pytest

from aoisim.cli import (RECORD_COLUMNS, SUMMARY_COLUMNS, build_config, main,
                        parse_config_file)
from aoisim.engine import ConfigError, Mode


def run_argv(*extra):
    return ["run", "--set", "n_devices=6", "--set", "n_rbs=6",
            "--set", "slots=40", "--set", "v_a=0.5", "--quiet", *extra]


# --- config ingestion ------------------------------------------------------------

def test_config_file_round_trip(tmp_path):
    cfg = tmp_path / "cell.cfg"
    cfg.write_text("# comment\n\nn_devices = 4\nmode=distributed_random\n"
                   "v_a=0.25\nheterogeneous_power=yes\n")
    raw = parse_config_file(str(cfg))
    config = build_config(raw)
    assert config.n_devices == 4
    assert config.mode is Mode.DISTRIBUTED_RANDOM
    assert config.v_a == 0.25
    assert config.heterogeneous_power is True


def test_config_file_rejects_malformed_line(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_devices\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(cfg))


def test_build_config_rejects_unknown_key():
    with pytest.raises(ConfigError):
        build_config({"n_device": "4"})


def test_bool_coercion_words():
    assert build_config({"rach_exact": "on"}).rach_exact is True
    assert build_config({"rach_exact": "0"}).rach_exact is False
    with pytest.raises(ConfigError):
        build_config({"rach_exact": "maybe"})


# --- run subcommand ---------------------------------------------------------------

def test_run_writes_csv(tmp_path):
    out = tmp_path / "run.csv"
    assert main(run_argv("--out", str(out))) == 0
    lines = out.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    assert any(l == "# n_devices=6" for l in comments)
    header = lines[len(comments)]
    assert header == ",".join(RECORD_COLUMNS)
    assert len(lines) - len(comments) - 1 == 40


def test_run_writes_jsonl(tmp_path):
    out = tmp_path / "run.jsonl"
    assert main(run_argv("--format", "jsonl", "--out", str(out))) == 0
    lines = out.read_text().splitlines()
    head = json.loads(lines[0])
    assert head["config"]["n_devices"] == 6
    assert head["config"]["mode"] == "distributed_sca"
    row = json.loads(lines[1])
    assert set(row) == set(RECORD_COLUMNS)
    assert row["slot"] == 1


def test_run_exit_codes():
    assert main(["run", "--set", "nope=1", "--quiet"]) == 1
    assert main(["run", "--set", "v_a=2.0", "--quiet"]) == 1
    assert main(["run", "--set", "oops", "--quiet"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["run", "--format", "xml"])
    assert exc.value.code == 1


def test_seed_and_slots_flags_override(tmp_path):
    out = tmp_path / "a.csv"
    assert main(run_argv("--seed", "9", "--slots", "12", "--out", str(out))) == 0
    text = out.read_text()
    assert "# seed=9" in text
    assert text.splitlines()[-1].startswith("12,")


# --- sweep subcommand --------------------------------------------------------------

def test_sweep_csv_shape_and_matched_seeds(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--set", "n_devices=8", "--set", "n_rbs=4",
                 "--set", "slots=30", "--parameter", "v_a",
                 "--values", "0.2,0.6", "--replicates", "2",
                 "--out", str(out), "--quiet"])
    assert code == 0
    lines = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == ",".join(("parameter", "value", "replicate", "seed")
                                + SUMMARY_COLUMNS)
    rows = [l.split(",") for l in lines[1:]]
    assert len(rows) == 4
    assert [r[1] for r in rows] == ["0.2", "0.2", "0.6", "0.6"]
    # replicate k reuses one seed across both sweep values
    assert rows[0][3] == rows[2][3]
    assert rows[1][3] == rows[3][3]


def test_sweep_rejects_unknown_parameter():
    assert main(["sweep", "--parameter", "nope", "--values", "1",
                 "--quiet"]) == 1


# --- preset subcommand ---------------------------------------------------------------

def test_preset_unknown_name_fails():
    assert main(["preset", "nosuch", "--quiet"]) == 1


def test_preset_writes_labeled_files(tmp_path):
    code = main(["preset", "two_device_game", "--out", str(tmp_path),
                 "--slots", "20", "--quiet"])
    assert code == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["two_device_game__sca.csv"]


def test_preset_out_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("AOISIM_OUT_DIR", str(tmp_path))
    assert main(["preset", "two_device_game", "--slots", "20", "--quiet"]) == 0
    assert (tmp_path / "two_device_game__sca.csv").exists()


def test_preset_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["preset", "convergence", "--out", str(d),
                     "--slots", "60", "--quiet"]) == 0
    fa, fb = (sorted(d.iterdir())[0] for d in (a, b))
    assert fa.read_bytes() == fb.read_bytes()


# --- verify subcommand ---------------------------------------------------------------

def test_verify_reports_one_line_per_check(capsys):
    # reduced scale exercises the wiring; tolerances may legitimately fail here
    code = main(["verify", "--runs", "5", "--slots", "2000", "--seed", "1",
                 "--quiet"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code in (0, 2)
    assert len(lines) == 4
    assert all(l.startswith(("PASS ", "FAIL ")) for l in lines)
